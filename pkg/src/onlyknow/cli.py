"""Command-line front end.

Exit codes: 0 for a positive verdict (or plain success), 1 for a
negative verdict, 2 for usage or input errors, 3 when the time budget
ran out (partial results only, never a wrong verdict).  The budget
comes from --budget or the ONLYKNOW_TIME_BUDGET environment variable,
in seconds.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import autoepistemic, finite_semantics, k45, kripke
from .decision import BudgetExceededError, Decider
from .formula import FormulaError, classify, max_agent, parse, to_text
from .normal_form import to_normal_form

_POSITIVE = ("SAT", "VALID", "YES")


def _budget_deadline(budget: float | None) -> float | None:
    if budget is None:
        raw = os.environ.get("ONLYKNOW_TIME_BUDGET")
        if raw is None:
            return None
        budget = float(raw)
    return time.monotonic() + budget


def _parse_formula(text: str, declared: int | None):
    f = parse(text, declared)
    return f, (declared if declared is not None else max(1, max_agent(f)))


def _emit(args, record: dict) -> None:
    if args.format == "jsonl":
        print(json.dumps(record, sort_keys=True))
    else:
        line = record["verdict"]
        if record.get("counterexample"):
            line += f"  counterexample: {record['counterexample']}"
        print(line)


def _verdict_code(verdict: str) -> int:
    return 0 if verdict in _POSITIVE else 1


# -- subcommands -------------------------------------------------------


def _cmd_parse(args) -> int:
    f, _ = _parse_formula(args.formula, args.agents)
    print(to_text(f))
    return 0


def _cmd_classify(args) -> int:
    f, _ = _parse_formula(args.formula, args.agents)
    flags = classify(f, args.agent)
    if args.format == "jsonl":
        print(json.dumps({"input": args.formula, **flags.__dict__}, sort_keys=True))
    else:
        for key, value in flags.__dict__.items():
            print(f"{key}: {value}")
    return 0


def _cmd_nf(args) -> int:
    f, _ = _parse_formula(args.formula, args.agents)
    for count, d in enumerate(to_normal_form(f)):
        if args.limit is not None and count >= args.limit:
            print("...")
            break
        print(to_text(d.to_formula()))
    return 0


def _decide_one(text: str, mode: str, agents: int | None, trace: bool, deadline: float | None) -> dict:
    f, _ = _parse_formula(text, agents)
    started = time.monotonic()
    decider = Decider(trace=trace, deadline=deadline)
    verdict = decider.consistent(f) if mode == "sat" else decider.valid(f)
    record = {
        "input": text,
        "verdict": {"satisfiable": "SAT", "unsatisfiable": "UNSAT", "valid": "VALID", "invalid": "INVALID"}[verdict.status],
        "millis": int((time.monotonic() - started) * 1000),
    }
    if trace and verdict.trace:
        record["trace"] = verdict.trace
    return record


def _decide_worker(task: tuple[str, str, int | None]) -> dict:
    text, mode, agents = task
    return _decide_one(text, mode, agents, trace=False, deadline=None)


def _cmd_decide(args) -> int:
    deadline = _budget_deadline(args.budget)
    if args.batch is None:
        record = _decide_one(args.formula, args.mode, args.agents, args.trace, deadline)
        if args.trace and args.format != "jsonl":
            for line in record.get("trace", []):
                print(line, file=sys.stderr)
            record.pop("trace", None)
        _emit(args, record)
        return _verdict_code(record["verdict"])

    with open(args.batch) as handle:
        lines = [ln.strip() for ln in handle if ln.strip() and not ln.startswith("#")]
    tasks = [(ln, args.mode, args.agents) for ln in lines]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = pool.map(_decide_worker, tasks)
            for task in tasks:
                if deadline is not None and time.monotonic() > deadline:
                    _emit(args, {"input": task[0], "verdict": "PARTIAL", "partial": True})
                    pool.shutdown(wait=False, cancel_futures=True)
                    return 3
                _emit(args, next(results))
        return 0
    for task in tasks:
        if deadline is not None and time.monotonic() > deadline:
            _emit(args, {"input": task[0], "verdict": "PARTIAL", "partial": True})
            return 3
        try:
            _emit(args, _decide_one(task[0], args.mode, args.agents, False, deadline))
        except BudgetExceededError:
            _emit(args, {"input": task[0], "verdict": "PARTIAL", "partial": True})
            return 3
    return 0


def _cmd_k45(args) -> int:
    f, _ = _parse_formula(args.formula, args.agents)
    model = k45.find_model(f)
    print("SAT" if model is not None else "UNSAT")
    if model is not None and args.witness:
        model.save(args.witness)
    return 0 if model is not None else 1


def _cmd_oracle(args) -> int:
    f, _ = _parse_formula(args.formula, None)
    phi = [a for a in args.phi.split(",") if a]
    result = finite_semantics.oracle_valid(f, phi, semantics=args.semantics, bound=args.bound)
    record = {"input": args.formula, "verdict": "VALID" if result.valid else "INVALID"}
    if result.counterexample is not None:
        record["counterexample"] = result.counterexample.describe()
    _emit(args, record)
    return _verdict_code(record["verdict"])


def _cmd_reduce(args) -> int:
    f, _ = _parse_formula(args.formula, None)
    phi = [a for a in args.phi.split(",") if a]
    print(to_text(finite_semantics.reduce_n_to_l(f, phi, bound=args.bound)))
    return 0


def _cmd_kripke(args) -> int:
    model = kripke.KripkeStructure.load(args.model)
    if args.kripke_command == "validate":
        report = kripke.validate(model)
        for agent, u, v, w in report.transitivity_violations:
            print(f"transitivity violation agent {agent}: ({u},{v}) and ({v},{w}) but not ({u},{w})")
        for agent, u, v, w in report.euclidean_violations:
            print(f"euclidean violation agent {agent}: ({u},{v}) and ({u},{w}) but not ({v},{w})")
        print("OK" if report.ok else "NOT-K45")
        return 0 if report.ok else 1
    f, _ = _parse_formula(args.formula, None)
    checker = {
        "basic": kripke.check_basic,
        "naive": kripke.check_naive_n,
        "fixed": kripke.check_fixed_n,
    }[args.semantics]
    value = checker(model, args.world, f)
    print("TRUE" if value else "FALSE")
    return 0 if value else 1


def _cmd_believes(args) -> int:
    deadline = _budget_deadline(args.budget)
    kb, _ = _parse_formula(args.kb, args.agents)
    query, _ = _parse_formula(args.query, args.agents)
    answer = autoepistemic.believes(args.agent, kb, query, Decider(deadline=deadline))
    _emit(args, {"input": f"{args.kb} |= {args.query}", "verdict": "YES" if answer else "NO"})
    return 0 if answer else 1


def _cmd_okn_sets(args) -> int:
    f, _ = _parse_formula(args.formula, None)
    phi = [a for a in args.phi.split(",") if a]
    sets = autoepistemic.only_knowing_sets(f, phi, bound=args.bound)
    for possible in sets:
        names = sorted(finite_semantics.world_to_text(w, phi) for w in possible)
        print("{" + ", ".join(names) + "}")
    print(f"count: {len(sets)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="onlyknow", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, agents=True, fmt=True):
        if agents:
            p.add_argument("--agents", type=int, default=None, help="declared agent count (default: largest index mentioned)")
        if fmt:
            p.add_argument("--format", choices=("text", "jsonl"), default="text")

    p = sub.add_parser("parse", help="parse and reprint a formula")
    p.add_argument("formula")
    common(p, fmt=False)
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("classify", help="syntactic classification relative to an agent")
    p.add_argument("formula")
    p.add_argument("--agent", type=int, default=1)
    common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("nf", help="stream the normal-form disjuncts")
    p.add_argument("formula")
    p.add_argument("--limit", type=int, default=None)
    common(p, fmt=False)
    p.set_defaults(func=_cmd_nf)

    p = sub.add_parser("decide", help="satisfiability or validity")
    p.add_argument("formula", nargs="?")
    p.add_argument("--mode", choices=("sat", "valid"), required=True)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--batch", default=None, help="file with one formula per line")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=float, default=None, help="time budget in seconds")
    common(p)
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("k45", help="K45 satisfiability of a basic formula")
    p.add_argument("formula")
    p.add_argument("--witness", default=None, help="write a witness model to this JSON file")
    common(p, fmt=False)
    p.set_defaults(func=_cmd_k45)

    p = sub.add_parser("oracle", help="finite-alphabet validity by enumeration")
    p.add_argument("formula")
    p.add_argument("--phi", required=True, help="comma-separated atom alphabet")
    p.add_argument("--semantics", choices=("levesque", "extended"), default="levesque")
    p.add_argument("--bound", type=int, default=2)
    common(p, agents=False)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("reduce", help="rewrite N away over a finite alphabet")
    p.add_argument("formula")
    p.add_argument("--phi", required=True)
    p.add_argument("--bound", type=int, default=2)
    common(p, agents=False, fmt=False)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("kripke", help="finite Kripke models")
    ksub = p.add_subparsers(dest="kripke_command", required=True)
    pv = ksub.add_parser("validate", help="report K45 frame violations")
    pv.add_argument("model")
    pv.set_defaults(func=_cmd_kripke)
    pc = ksub.add_parser("check", help="model-check a formula at a world")
    pc.add_argument("model")
    pc.add_argument("formula")
    pc.add_argument("--world", required=True)
    pc.add_argument("--semantics", choices=("basic", "naive", "fixed"), default="basic")
    pc.set_defaults(func=_cmd_kripke)

    p = sub.add_parser("believes", help="entailment under only knowing")
    p.add_argument("--agent", type=int, required=True)
    p.add_argument("--kb", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--budget", type=float, default=None)
    common(p)
    p.set_defaults(func=_cmd_believes)

    p = sub.add_parser("okn-sets", help="finite fixed points of only knowing")
    p.add_argument("formula")
    p.add_argument("--phi", required=True)
    p.add_argument("--bound", type=int, default=2)
    common(p, agents=False, fmt=False)
    p.set_defaults(func=_cmd_okn_sets)

    return top


def main(argv: list[str] | None = None) -> int:
    sys.setrecursionlimit(20000)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError:
        print("PARTIAL: time budget exceeded", file=sys.stderr)
        return 3
    except (FormulaError, kripke.ModelError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
