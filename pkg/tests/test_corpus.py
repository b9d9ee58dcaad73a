from pathlib import Path

from onlyknow.corpus import (
    CorpusEntry,
    cross_check,
    default_corpus_dir,
    generate_random,
    load_corpus,
    run_entry,
)
from onlyknow.formula import classify, is_basic, in_onl_minus, to_text


def test_generation_is_deterministic():
    a = generate_random(1, "basic")
    b = generate_random(1, "basic")
    assert a == b
    assert a != generate_random(2, "basic")


def test_basic_profile_is_basic():
    for seed in range(200):
        f = generate_random(seed, "basic", max_modal_depth=3, n_atoms=3, n_agents=2)
        assert is_basic(f), to_text(f)


def test_onl_minus_profile_respects_the_restriction():
    for seed in range(200):
        f = generate_random(seed, "onl_minus", max_modal_depth=3, n_atoms=3, n_agents=2)
        assert in_onl_minus(f), to_text(f)


def test_full_profile_eventually_uses_everything():
    kinds = set()
    for seed in range(300):
        f = generate_random(seed, "full", max_modal_depth=3, n_atoms=3, n_agents=2)
        c = classify(f, 1)
        kinds.add((c.basic, c.modal_depth is None))
    assert (False, True) in kinds  # some formula with V
    assert any(not basic for basic, _ in kinds)


def test_corpus_file_loads_and_reproduces(tmp_path):
    directory = default_corpus_dir()
    entries = []
    for path in sorted(Path(directory).glob("*.jsonl")):
        entries.extend(load_corpus(path))
    assert len(entries) >= 20
    assert all(e.note for e in entries)
    for entry in entries:
        assert run_entry(entry) == entry.expected, entry.formula


def test_cross_check_small_run():
    report = cross_check(samples=60, seed=777, single_agent_samples=40)
    assert report.ok, report.summary()
    assert report.basic_checked == 60
    assert report.single_agent_checked == 40
    assert report.corpus_checked >= 20


def test_run_entry_modes(tmp_path):
    sat_entry = CorpusEntry(formula="p", mode="sat", expected="SAT", agents=1)
    valid_entry = CorpusEntry(formula="p", mode="valid", expected="INVALID", agents=1)
    assert run_entry(sat_entry) == "SAT"
    assert run_entry(valid_entry) == "INVALID"
