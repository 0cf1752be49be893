"""Command-line behaviour: subcommands, exit codes, manifests, replay."""

import os

import numpy as np
import pytest

from plantbench import PowerIterationError, load_instance
from plantbench.cli import main


def run_cli(args):
    return main(list(args))


# ---------------------------------------------------------------------------
# gen / gen-small


def test_gen_writes_instance_and_manifest(tmp_path, capsys):
    out = tmp_path / "inst.txt"
    code = run_cli(["gen", "--n", "16", "--k", "3", "--dw", "0.1",
                    "--seed", "5", "--out", str(out)])
    assert code == 0
    printed = capsys.readouterr().out
    assert "planted energies" in printed and "pattern 3" in printed
    inst = load_instance(out)
    assert inst.n == 16 and inst.pattern_set.k == 3
    manifest = (str(out) + ".manifest.txt")
    lines = open(manifest).read()
    assert "command: gen" in lines
    assert f"output: {out} blake2b=" in lines
    assert "argv: gen --n 16" in lines


def test_gen_rejects_bad_dimension(tmp_path, capsys):
    code = run_cli(["gen", "--n", "6", "--k", "2",
                    "--out", str(tmp_path / "x.txt")])
    assert code == 3
    assert "error:" in capsys.readouterr().err


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        run_cli(["gen", "--n", "16"])
    assert info.value.code == 2


def test_gen_small_prints_catalogue_summary(capsys):
    listed = {
        "a": ("(1, 3, 4)", "0.1"),
        "b": ("(4, 3, 3)", "0.1"),
        "b*": ("(2, 4, 2)", "0.3"),
        "c": ("(3, 3, 4)", "0.1"),
        "d": ("(4, 4, 2)", "0.1"),
        "e": ("(4, 1, 3)", "-0.13"),
        "f": ("(4, 4, 4, 4)", "0.1"),
    }
    for ident, (dists, dw) in listed.items():
        assert run_cli(["gen-small", "--id", ident]) == 0
        out = capsys.readouterr().out
        assert f"distances {dists} dw={dw}" in out, ident


def test_gen_small_accepts_bstar_alias(capsys):
    assert run_cli(["gen-small", "--id", "bstar"]) == 0
    assert "catalogue b*" in capsys.readouterr().out


# ---------------------------------------------------------------------------
# solve / oracle


@pytest.fixture()
def small_c(tmp_path):
    path = tmp_path / "c.txt"
    assert run_cli(["gen-small", "--id", "c", "--out", str(path)]) == 0
    return path


def test_solve_csv_schema_and_determinism(tmp_path, small_c, capsys):
    out1, out2 = tmp_path / "r1.csv", tmp_path / "r2.csv"
    args = ["solve", "--instance", str(small_c), "--solver", "class1",
            "--alpha", "3", "--runs", "5", "--seed", "1"]
    assert run_cli(args + ["--out", str(out1)]) == 0
    assert run_cli(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().splitlines()
    assert lines[0] == "seed,energy,label,steps,converged"
    assert len(lines) == 6
    for line in lines[1:]:
        seed, energy, label, steps, converged = line.split(",")
        float(energy), int(seed), int(steps)
        assert converged in ("true", "false")


def test_solve_missing_instance_exits_3(tmp_path, capsys):
    code = run_cli(["solve", "--instance", str(tmp_path / "nope.txt")])
    assert code == 3


def test_oracle_reports_ground_state(small_c, capsys):
    assert run_cli(["oracle", "--instance", str(small_c),
                    "--full-spectrum", "--eig"]) == 0
    out = capsys.readouterr().out
    assert "ground_energy: -29.6" in out
    assert "degeneracy: 1" in out
    assert "spectrum_size: 128" in out
    assert "lambda_max:" in out


def test_oracle_numeric_failure_exits_4(monkeypatch, small_c, capsys):
    import plantbench.cli as cli_mod

    def boom(inst):
        raise PowerIterationError(estimate=0.0, residual=1.0, iterations=1)

    monkeypatch.setattr(cli_mod.oracle_mod, "max_eigenvalue", boom)
    code = run_cli(["oracle", "--instance", str(small_c), "--eig"])
    assert code == 4
    assert "numerical failure" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# sweeps and reports


def test_sweep_report_pipeline(tmp_path, capsys):
    csv = tmp_path / "sweep.csv"
    code = run_cli(["sweep-sr", "--small", "a", "--alpha-grid", "1:8:4",
                    "--runs", "30", "--seed", "3", "--threads", "1",
                    "--out", str(csv)])
    assert code == 0
    assert csv.exists() and (tmp_path / "sweep.csv.meta.txt").exists()
    svg = tmp_path / "sweep.svg"
    assert run_cli(["report", "--in", str(csv), "--kind", "heatmap",
                    "--out", str(svg)]) == 0
    assert svg.read_text().startswith("<?xml")


def test_sweep_requires_some_instance(capsys, tmp_path):
    code = run_cli(["sweep-sr", "--alpha-grid", "1:2:2",
                    "--out", str(tmp_path / "x.csv")])
    assert code == 3


def test_grid_spec_parsing(capsys, tmp_path):
    # bad grid syntax is a validation error, not a crash
    code = run_cli(["sweep-sr", "--small", "a", "--alpha-grid", "1:2",
                    "--out", str(tmp_path / "x.csv")])
    assert code == 3
    code = run_cli(["sweep-sr", "--small", "a", "--alpha-grid", "0:2:3:log",
                    "--out", str(tmp_path / "x.csv")])
    assert code == 3


def test_threads_env_fallback(monkeypatch, tmp_path, capsys):
    csv = tmp_path / "s.csv"
    monkeypatch.setenv("PLANTBENCH_THREADS", "2")
    assert run_cli(["sweep-sr", "--small", "a", "--alpha-grid", "2:4:2",
                    "--runs", "10", "--out", str(csv)]) == 0
    monkeypatch.setenv("PLANTBENCH_THREADS", "zero")
    assert run_cli(["sweep-sr", "--small", "a", "--alpha-grid", "2:4:2",
                    "--runs", "10", "--out", str(csv)]) == 3


def test_scan_subcommand(tmp_path, capsys):
    csv = tmp_path / "scan.csv"
    code = run_cli(["scan", "--kind", "dxi", "--values=-2,0",
                    "--alpha-grid", "2:6:3", "--runs", "20", "--seed", "2",
                    "--threads", "1", "--out", str(csv)])
    assert code == 0
    header = csv.read_text().splitlines()[0].split(",")
    assert header[:2] == ["dxi", "alpha"]
    assert "scan dxi on c" in capsys.readouterr().out


def test_sweep_k_and_all_report_kinds(tmp_path, capsys):
    kcsv = tmp_path / "k.csv"
    code = run_cli(["sweep-k", "--n", "16", "--k-list", "1,2,4",
                    "--runs", "25", "--seed", "0", "--threads", "1",
                    "--out", str(kcsv)])
    assert code == 0
    hist = tmp_path / "k.hist.csv"
    assert hist.exists()
    assert run_cli(["report", "--in", str(hist), "--kind", "hist",
                    "--k", "4", "--out", str(tmp_path / "h.svg")]) == 0
    assert run_cli(["report", "--in", str(kcsv), "--kind", "measure",
                    "--out", str(tmp_path / "m.svg")]) == 0


def test_report_empty_csv_writes_nothing(tmp_path, capsys):
    src = tmp_path / "empty.csv"
    src.write_text("alpha,sr\n")
    out = tmp_path / "x.svg"
    assert run_cli(["report", "--in", str(src), "--kind", "heatmap",
                    "--out", str(out)]) == 3
    assert not out.exists()


def test_report_wrong_schema_exits_3(tmp_path, capsys):
    src = tmp_path / "odd.csv"
    src.write_text("foo,bar\n1,2\n")
    assert run_cli(["report", "--in", str(src), "--kind", "heatmap",
                    "--out", str(tmp_path / "x.svg")]) == 3
    assert run_cli(["report", "--in", str(src), "--kind", "hist",
                    "--out", str(tmp_path / "x.svg")]) == 3
    assert run_cli(["report", "--in", str(src), "--kind", "measure",
                    "--out", str(tmp_path / "x.svg")]) == 3


# ---------------------------------------------------------------------------
# manifests and replay


def read_manifest_argv(path):
    for line in open(path):
        if line.startswith("argv: "):
            return line[len("argv: "):].split()
    raise AssertionError("no argv line in manifest")


def test_manifest_replay_reproduces_bytes(tmp_path, capsys):
    csv = tmp_path / "sweep.csv"
    args = ["sweep-sr", "--small", "b", "--alpha-grid", "1:6:3",
            "--runs", "20", "--seed", "7", "--threads", "2",
            "--out", str(csv)]
    assert run_cli(args) == 0
    first = csv.read_bytes()
    meta_first = (tmp_path / "sweep.csv.meta.txt").read_bytes()
    replay = read_manifest_argv(str(csv) + ".manifest.txt")
    assert replay == args
    # replay under a different worker count: bytes must not change
    replay[replay.index("--threads") + 1] = "1"
    assert run_cli(replay) == 0
    assert csv.read_bytes() == first
    assert (tmp_path / "sweep.csv.meta.txt").read_bytes() == meta_first


def test_manifest_records_input_digest(tmp_path, small_c, capsys):
    out = tmp_path / "runs.csv"
    assert run_cli(["solve", "--instance", str(small_c), "--runs", "2",
                    "--out", str(out)]) == 0
    text = open(str(out) + ".manifest.txt").read()
    assert f"input: {small_c} blake2b=" in text
