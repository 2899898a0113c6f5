import json
from pathlib import Path

from click.testing import CliRunner

from remap.automata.io import load_machine
from remap.automata.transform import isomorphic
from remap.cli import main

MACHINES = Path(__file__).resolve().parents[1] / "machines"


def run_cli(*args):
    return CliRunner().invoke(main, list(args), catch_exceptions=False)


def test_learn_exact(tmp_path):
    out = tmp_path / "out"
    result = run_cli(
        "learn", "--target", str(MACHINES / "astarb.json"),
        "--teacher", "exact", "--seed", "7", "--out", str(out),
    )
    assert result.exit_code == 0, result.output
    machine = load_machine(out / "machine.json")
    assert machine.n_states == 3
    trace = [json.loads(l) for l in (out / "trace.jsonl").read_text().splitlines()]
    assert sum(1 for e in trace if e["kind"] == "eq_query") == 2


def test_learn_pac_requires_samples(tmp_path):
    result = CliRunner().invoke(
        main,
        ["learn", "--target", str(MACHINES / "astarb.json"), "--teacher", "pac",
         "--out", str(tmp_path)],
    )
    assert result.exit_code == 1
    assert "--samples" in result.output


def test_baseline(tmp_path):
    out = tmp_path / "out"
    result = run_cli("baseline", "--target", str(MACHINES / "astarb.json"), "--out", str(out))
    assert result.exit_code == 0, result.output
    truth = load_machine(MACHINES / "astarb.json")
    assert isomorphic(load_machine(out / "machine.json"), truth)


def test_experiment_row_count_and_determinism(tmp_path):
    args = [
        "experiment", "--target", str(MACHINES / "astarb.json"),
        "--samples", "2,5", "--trials", "3", "--seed", "1",
    ]
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    assert run_cli(*args, "--out", str(out1)).exit_code == 0
    assert run_cli(*args, "--out", str(out2)).exit_code == 0
    csv1 = (out1 / "results.csv").read_bytes()
    assert csv1 == (out2 / "results.csv").read_bytes()
    assert len(csv1.decode().splitlines()) == 1 + 2 * 3
    for trace in (out1 / "traces").glob("*.jsonl"):
        twin = out2 / "traces" / trace.name
        assert trace.read_bytes() == twin.read_bytes()


def test_experiment_parallel_matches_serial(tmp_path):
    args = [
        "experiment", "--target", str(MACHINES / "astarb.json"),
        "--samples", "3", "--trials", "4", "--seed", "2",
    ]
    serial, parallel = tmp_path / "s", tmp_path / "p"
    assert run_cli(*args, "--out", str(serial), "--jobs", "1").exit_code == 0
    assert run_cli(*args, "--out", str(parallel), "--jobs", "2").exit_code == 0
    assert (serial / "results.csv").read_bytes() == (parallel / "results.csv").read_bytes()


def test_convert_round_trip(tmp_path):
    rm = tmp_path / "rm.json"
    moore = tmp_path / "m.json"
    back = tmp_path / "rm2.json"
    # office fixture: complete with halt, convert to moore, and back again
    halted = tmp_path / "halted.json"
    assert run_cli(
        "convert", "--op", "halt", "--in", str(MACHINES / "office_delivery.json"),
        "--out", str(halted),
    ).exit_code == 0
    assert run_cli("convert", "--op", "mealy2moore", "--in", str(halted), "--out", str(moore)).exit_code == 0
    assert run_cli("convert", "--op", "moore2mealy", "--in", str(moore), "--out", str(rm)).exit_code == 0
    assert run_cli("convert", "--op", "mealy2moore", "--in", str(rm), "--out", str(back)).exit_code == 0
    first = load_machine(moore)
    second = load_machine(back)
    # classification-identical across the round trip (brute force, length <= 8)
    import itertools

    for n in range(9):
        for combo in itertools.product(first.input_alphabet, repeat=n):
            assert first.run(combo) == second.run(combo)


def test_convert_repair(tmp_path):
    out = tmp_path / "fixed.json"
    result = run_cli(
        "convert", "--op", "repair", "--in", str(MACHINES / "craft_overlap.json"),
        "--out", str(out),
    )
    assert result.exit_code == 0, result.output
    fixed = load_machine(out)
    assert fixed.is_deterministic()
    assert fixed.n_states == 5


def test_convert_summarize(tmp_path):
    out = tmp_path / "edges.txt"
    result = run_cli(
        "convert", "--op", "summarize", "--in", str(MACHINES / "office_delivery.json"),
        "--out", str(out),
    )
    assert result.exit_code == 0, result.output
    text = out.read_text()
    assert "∨" in text and "∧" in text


def test_convert_type_mismatch(tmp_path):
    result = CliRunner().invoke(
        main,
        ["convert", "--op", "repair", "--in", str(MACHINES / "astarb.json"),
         "--out", str(tmp_path / "x.json")],
    )
    assert result.exit_code == 1


def test_bad_machine_file_exits_cleanly(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "moore", "surprise": true}')
    result = CliRunner().invoke(
        main, ["learn", "--target", str(bad), "--teacher", "exact", "--out", str(tmp_path)]
    )
    assert result.exit_code == 1
    assert "missing fields" in result.output or "unknown fields" in result.output


def test_help_lists_commands():
    result = run_cli("--help")
    for command in ["learn", "baseline", "experiment", "convert", "serve"]:
        assert command in result.output
