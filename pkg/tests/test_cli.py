import json

from onlyknow.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_decide_valid_exit_zero(capsys):
    code, out, _ = run(
        capsys, "decide", "--mode", "valid", "--agents", "2", "O1 (~L1 L2 p -> ~L2 p) -> L1 ~L2 p"
    )
    assert code == 0
    assert out.strip() == "VALID"


def test_decide_unsat_exit_one(capsys):
    code, out, _ = run(capsys, "decide", "--mode", "sat", "--agents", "2", "N1 ~O2 p & L1 ~O2 p")
    assert code == 1
    assert out.strip() == "UNSAT"


def test_decide_parse_error_exit_two(capsys):
    code, _, err = run(capsys, "decide", "--mode", "sat", "p & & q")
    assert code == 2
    assert "error" in err


def test_decide_trace_goes_to_stderr(capsys):
    code, out, err = run(capsys, "decide", "--mode", "sat", "--trace", "L1 p & ~L1 q")
    assert code == 0
    assert out.strip() == "SAT"
    assert "satisfiable?" in err


def test_decide_jsonl_record_fields(capsys):
    code, out, _ = run(capsys, "decide", "--mode", "sat", "--format", "jsonl", "p | q")
    record = json.loads(out)
    assert record["input"] == "p | q"
    assert record["verdict"] == "SAT"
    assert "millis" in record


def test_batch_mode_deterministic_verdicts(tmp_path, capsys):
    batch = tmp_path / "batch.txt"
    batch.write_text("p & ~p\nL1 p & ~L1 L1 p\nO1 ~O2 p\n# comment\n\n")
    args = ("decide", "--mode", "sat", "--agents", "2", "--format", "jsonl", "--batch", str(batch))
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0

    def strip_millis(text):
        return [
            {k: v for k, v in json.loads(line).items() if k != "millis"}
            for line in text.strip().splitlines()
        ]

    records = strip_millis(out1)
    assert records == strip_millis(out2)
    assert [r["verdict"] for r in records] == ["UNSAT", "UNSAT", "SAT"]


def test_batch_budget_partial_exit_three(tmp_path, capsys, monkeypatch):
    batch = tmp_path / "batch.txt"
    batch.write_text("p\nq\n")
    monkeypatch.setenv("ONLYKNOW_TIME_BUDGET", "-1")
    code, out, _ = run(capsys, "decide", "--mode", "sat", "--format", "jsonl", "--batch", str(batch))
    assert code == 3
    assert "PARTIAL" in out


def test_single_query_budget_exit_three(capsys):
    code, _, err = run(capsys, "decide", "--mode", "sat", "--budget", "-1", "L1 p & ~L1 q")
    assert code == 3
    assert "PARTIAL" in err


def test_nf_subcommand_streams_disjuncts(capsys):
    code, out, _ = run(capsys, "nf", "L1 (p | L1 q)")
    assert code == 0
    assert out.strip().splitlines() == ["L1 p", "L1 q"]
    code, out, _ = run(capsys, "nf", "--limit", "1", "L1 (p | L1 q)")
    assert out.strip().splitlines() == ["L1 p", "..."]


def test_k45_with_witness(tmp_path, capsys):
    witness = tmp_path / "model.json"
    code, out, _ = run(capsys, "k45", "--witness", str(witness), "L1 p & ~L1 q")
    assert code == 0 and out.strip() == "SAT"
    payload = json.loads(witness.read_text())
    assert "worlds" in payload and "relations" in payload
    code, out, _ = run(capsys, "k45", "L1 p & ~L1 L1 p")
    assert code == 1 and out.strip() == "UNSAT"


def test_oracle_subcommand(capsys):
    code, out, _ = run(capsys, "oracle", "--phi", "p", "--semantics", "levesque", "~L1 ~p -> N1 ~p")
    assert code == 0 and out.strip() == "VALID"
    code, out, _ = run(capsys, "oracle", "--phi", "p", "--semantics", "extended", "~L1 ~p -> N1 ~p")
    assert code == 1
    assert out.startswith("INVALID")
    assert "counterexample" in out


def test_reduce_subcommand(capsys):
    code, out, _ = run(capsys, "reduce", "--phi", "p", "N1 p")
    assert code == 0 and out.strip() == "~L1 p"


def test_kripke_subcommands(tmp_path, capsys):
    model = tmp_path / "m.json"
    model.write_text('{"worlds": {"w": ["p"]}, "relations": {"1": [["w", "w"]]}}')
    code, out, _ = run(capsys, "kripke", "validate", str(model))
    assert code == 0 and out.strip() == "OK"
    code, out, _ = run(capsys, "kripke", "check", str(model), "--world", "w", "--semantics", "naive", "L1 p & N1 p")
    assert code == 0 and out.strip() == "TRUE"
    code, out, _ = run(capsys, "kripke", "check", str(model), "--world", "w", "L1 ~p")
    assert code == 1 and out.strip() == "FALSE"


def test_believes_subcommand(capsys):
    code, out, _ = run(
        capsys, "believes", "--agent", "1", "--agents", "2",
        "--kb", "~L1 L2 p -> ~L2 p", "--query", "~L2 p",
    )
    assert code == 0 and out.strip() == "YES"
    code, out, _ = run(
        capsys, "believes", "--agent", "1", "--agents", "2",
        "--kb", "L2 p & (~L1 L2 p -> ~L2 p)", "--query", "~L2 p",
    )
    assert code == 1 and out.strip() == "NO"


def test_okn_sets_subcommand(capsys):
    code, out, _ = run(capsys, "okn-sets", "--phi", "p", "~L1 ~p -> p")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines == ["{p}", "count: 1"]


def test_parse_and_classify(capsys):
    code, out, _ = run(capsys, "parse", "O1 p")
    assert code == 0 and out.strip() == "O1 p"
    code, out, _ = run(capsys, "classify", "--agent", "1", "q & N2 L1 p")
    assert code == 0
    assert "i_objective: True" in out


def test_jobs_parallel_batch(tmp_path, capsys):
    batch = tmp_path / "batch.txt"
    batch.write_text("p\np & ~p\nL1 p -> L1 L1 p\n")
    code, out, _ = run(capsys, "decide", "--mode", "sat", "--jobs", "2", "--format", "jsonl", "--batch", str(batch))
    assert code == 0
    verdicts = [json.loads(line)["verdict"] for line in out.strip().splitlines()]
    assert verdicts == ["SAT", "UNSAT", "SAT"]
