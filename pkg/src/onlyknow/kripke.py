"""Finite multi-agent Kripke structures: K45 frame validation, model
checking of basic formulas, and the two finite readings of N (the naive
complement clause and its equivalence-restricted variant).

The finite N clauses are kept for what they demonstrate: on a one-world
reflexive model with p true, both make ``L1 p & N1 p`` come out true, so
no finite structure can support the axiom that believing at most ~p
rules out believing p.  Model files are JSON: ``worlds`` maps a world
name to the list of atoms true there (unlisted atoms are false), and
``relations`` maps an agent index to a list of world-name pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .formula import (
    BINARY,
    And,
    Atom,
    FalseConst,
    Formula,
    FormulaError,
    Implies,
    L,
    N,
    Not,
    NotBasicError,
    Or,
    TrueConst,
    Val,
    ValPresentError,
)


class ModelError(ValueError):
    """Structurally broken model: dangling references, bad JSON shape."""


@dataclass(frozen=True)
class KripkeStructure:
    worlds: dict[str, frozenset[str]]
    relations: dict[int, frozenset[tuple[str, str]]]

    def successors(self, agent: int, world: str) -> frozenset[str]:
        pairs = self.relations.get(agent, frozenset())
        return frozenset(v for (u, v) in pairs if u == world)

    def to_json(self) -> str:
        payload = {
            "worlds": {w: sorted(a) for w, a in sorted(self.worlds.items())},
            "relations": {
                str(agent): sorted([u, v] for (u, v) in pairs)
                for agent, pairs in sorted(self.relations.items())
            },
        }
        return json.dumps(payload, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "KripkeStructure":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ModelError(f"bad model JSON: {exc}") from exc
        if not isinstance(payload, dict) or "worlds" not in payload:
            raise ModelError("model JSON needs a 'worlds' mapping")
        worlds = {
            str(w): frozenset(str(a) for a in atoms_true)
            for w, atoms_true in payload["worlds"].items()
        }
        relations = {}
        for agent, pairs in payload.get("relations", {}).items():
            try:
                index = int(agent)
            except ValueError as exc:
                raise ModelError(f"agent key {agent!r} is not an integer") from exc
            relations[index] = frozenset((str(u), str(v)) for u, v in pairs)
        return cls(worlds=worlds, relations=relations)

    @classmethod
    def load(cls, path: str | Path) -> "KripkeStructure":
        return cls.from_json(Path(path).read_text())

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json() + "\n")


@dataclass
class ValidationReport:
    transitivity_violations: list[tuple[int, str, str, str]] = field(default_factory=list)
    euclidean_violations: list[tuple[int, str, str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.transitivity_violations and not self.euclidean_violations


def validate(m: KripkeStructure) -> ValidationReport:
    """Every transitivity or euclideanness violation, as (agent, u, v, w)
    triples; an empty report certifies a K45 structure.  Dangling world
    references are an error, not a report entry.
    """
    for agent, pairs in m.relations.items():
        for u, v in pairs:
            if u not in m.worlds or v not in m.worlds:
                raise ModelError(f"relation of agent {agent} mentions undeclared world in ({u}, {v})")
    report = ValidationReport()
    for agent, pairs in sorted(m.relations.items()):
        succ = {w: m.successors(agent, w) for w in m.worlds}
        for u, v in sorted(pairs):
            for w in sorted(succ[v]):
                if w not in succ[u]:
                    report.transitivity_violations.append((agent, u, v, w))
            for w in sorted(succ[u]):
                if w not in succ[v]:
                    report.euclidean_violations.append((agent, u, v, w))
    return report


def check_basic(m: KripkeStructure, world: str, f: Formula) -> bool:
    """Standard Kripke evaluation of a basic formula."""
    return _eval(m, world, f, n_mode=None)


def check_naive_n(m: KripkeStructure, world: str, f: Formula) -> bool:
    """N over the raw complement of the agent's successor set."""
    return _eval(m, world, f, n_mode="naive")


def check_fixed_n(m: KripkeStructure, world: str, f: Formula) -> bool:
    """N over the complement, restricted to worlds whose successor set
    matches (the agent's epistemic state is held fixed)."""
    return _eval(m, world, f, n_mode="fixed")


def _eval(m: KripkeStructure, world: str, f: Formula, n_mode: str | None) -> bool:
    if world not in m.worlds:
        raise ModelError(f"undeclared world {world!r}")
    if isinstance(f, Atom):
        return f.name in m.worlds[world]
    if isinstance(f, TrueConst):
        return True
    if isinstance(f, FalseConst):
        return False
    if isinstance(f, Not):
        return not _eval(m, world, f.sub, n_mode)
    if isinstance(f, BINARY):
        a = _eval(m, world, f.left, n_mode)
        b = _eval(m, world, f.right, n_mode)
        if isinstance(f, And):
            return a and b
        if isinstance(f, Or):
            return a or b
        if isinstance(f, Implies):
            return (not a) or b
        return a == b
    if isinstance(f, L):
        return all(_eval(m, v, f.sub, n_mode) for v in sorted(m.successors(f.agent, world)))
    if isinstance(f, N):
        if n_mode is None:
            raise NotBasicError("basic evaluation cannot interpret N; pick a finite N clause")
        succ = m.successors(f.agent, world)
        others = [v for v in sorted(m.worlds) if v not in succ]
        if n_mode == "fixed":
            others = [v for v in others if m.successors(f.agent, v) == succ]
        return all(_eval(m, v, f.sub, n_mode) for v in others)
    if isinstance(f, Val):
        raise ValPresentError("Kripke evaluation is defined for V-free formulas")
    raise FormulaError(f"unknown node {f!r}")
