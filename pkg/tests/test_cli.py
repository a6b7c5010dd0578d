from __future__ import annotations

import json

import pytest

from tutteplane.cli import main
from tutteplane.io import parse_graph, parse_grid_tsv, parse_sidecar


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_examples(capsys, data_dir):
    code, out, _ = run(capsys, "eval", str(data_dir / "triangle.graph"), "--x", "1", "--y", "1")
    assert code == 0 and out.strip() == "T(G;1,1) = 3"
    code, out, _ = run(capsys, "eval", str(data_dir / "loop.graph"), "--x", "5", "--y", "-2")
    assert code == 0 and out.strip() == "T(G;5,-2) = -2"
    for mode in ("brute", "delcon", "auto"):
        code, out, _ = run(capsys, "eval", str(data_dir / "triangle.graph"), "--q", "1", "--alpha", "2", "--mode", mode)
        assert code == 0 and out.strip() == "Z(G;1,2) = 27"


def test_eval_file_weights_and_json(capsys, data_dir):
    code, out, _ = run(capsys, "--json", "eval", str(data_dir / "q0.graph"), "--q", "2")
    record = json.loads(out)
    assert code == 0 and record["weights"] == "file"
    assert "/" in record["Z"] or record["Z"].lstrip("-").isdigit()


def test_eval_usage_errors(capsys, data_dir, tmp_path):
    code, _, err = run(capsys, "eval", str(data_dir / "triangle.graph"), "--q", "2")
    assert code == 2 and "--alpha" in err
    code, _, err = run(capsys, "eval", str(data_dir / "triangle.graph"), "--x", "1")
    assert code == 2
    bad = tmp_path / "bad.graph"
    bad.write_text("p tutte 3 2\ne 1 2\ne 1 9\n")
    code, _, err = run(capsys, "eval", str(bad), "--x", "1", "--y", "1")
    assert code == 2 and "line 3" in err
    big = tmp_path / "big.graph"
    big.write_text("p tutte 2 30\n" + "e 1 2\n" * 30)
    code, _, err = run(capsys, "eval", str(big), "--x", "2", "--y", "2", "--mode", "brute")
    assert code == 2 and "--mode auto" in err
    code, out, _ = run(capsys, "eval", str(big), "--x", "2", "--y", "2")
    assert code == 0 and str(2**30) in out
    code, _, err = run(capsys, "eval", str(data_dir / "triangle.graph"), "--x", "2", "--y", "2", "--mode", "brute",
                       "--max-subset-edges", "2")
    assert code == 2 and "cap of 2" in err
    code, out, _ = run(capsys, "eval", str(data_dir / "triangle.graph"), "--x", "2", "--y", "2", "--mode", "brute",
                       "--max-subset-edges", "3")
    assert code == 0 and out.strip() == "T(G;2,2) = 8"


def test_classify_examples(capsys):
    assert run(capsys, "classify", "--x", "1/3", "--y", "-2")[1].splitlines()[0] == "EQUIV_PERFECT_MATCHINGS"
    assert run(capsys, "classify", "--x", "1", "--y", "1")[1].splitlines()[0] == "FP_EXACT"
    code, out, _ = run(capsys, "--json", "classify", "--x", "-5/3", "--y", "-1/2")
    record = json.loads(out)
    assert record["tag"] == "NO_FPRAS_UNLESS_RP_SHARP_P"
    assert "NO_FPRAS_UNLESS_RP_NP" in {f["tag"] for f in record["applicable"]}


def test_plan_example(capsys):
    code, out, _ = run(capsys, "--json", "plan", "--x", "-1/5", "--y", "0", "--target", "x-escape")
    record = json.loads(out)
    assert code == 0
    assert len(record["steps"]) == 14
    assert [s["op"] for s in record["steps"]] == ["stretch", "thicken"] * 7
    assert record["q_preserved"] and record["replay_matches"]
    code, out, _ = run(capsys, "plan", "--x", "-1/5", "--y", "0", "--target", "far-left")
    assert out.startswith("14-step plan")


def test_plan_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["plan", "--x", "0", "--y", "0", "--target", "bogus"])
    assert info.value.code == 2
    code, out, _ = run(capsys, "plan", "--x", "-1/5", "--y", "0", "--target", "far-left", "--max-depth", "3")
    assert code == 1 and out.startswith("no plan")


@pytest.mark.parametrize(
    "kind, instance, expected",
    [
        ("3waycut", "star.graph", "c=2 N=3 residual≤1/4"),
        ("matchings", "c4.graph", "N=2 residual≤1/4"),
        ("colourings", "c4.graph", "P(G;3,0)=18"),
        ("colourings", "p3.graph", "P(G;3,0)=24"),
        ("3dm", "small.3dm", "N=1 residual≤1/4"),
        ("q0", "q0.graph", "stretch identity holds"),
    ],
)
def test_reduce_examples(capsys, data_dir, tmp_path, kind, instance, expected):
    prefix = tmp_path / "bundle"
    code, out, _ = run(capsys, "reduce", kind, str(data_dir / instance), "--run", "--out", str(prefix))
    assert code == 0
    assert expected in out
    graph = parse_graph(prefix.with_suffix(".graph").read_text())
    params = parse_sidecar(prefix.with_suffix(".params").read_text())
    assert params["kind"] == kind
    assert graph.graph.m > 0


def test_reduce_hypothesis_violation(capsys, data_dir, tmp_path):
    code, _, err = run(capsys, "reduce", "matchings", str(data_dir / "triangle.graph"), "--out", str(tmp_path / "x"))
    assert code == 2 and "hypothesis violated" in err
    code, _, err = run(capsys, "reduce", "3waycut", str(data_dir / "triangle.graph"), "--out", str(tmp_path / "x"))
    assert code == 2 and "'t' lines" in err
    code, _, err = run(capsys, "reduce", "3waycut", str(data_dir / "star.graph"), "--q", "1", "--out", str(tmp_path / "x"))
    assert code == 2 and "q = 1" in err


def test_verify_atlas_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "atlas", "--seed", "42")
    assert code == 0
    assert out.strip().endswith("all checks passed")


def test_verify_is_deterministic(capsys):
    first = run(capsys, "--json", "verify", "--suite", "atlas", "--seed", "7")[1]
    second = run(capsys, "--json", "verify", "--suite", "atlas", "--seed", "7")[1]
    assert first == second


def test_atlas_map(capsys, tmp_path):
    out_path = tmp_path / "grid.tsv"
    code, out, _ = run(capsys, "atlas-map", "--x-range", "-1,1", "--y-range", "-1,1", "--step", "1/2", "--out", str(out_path))
    assert code == 0
    rows = parse_grid_tsv(out_path.read_text())
    assert len(rows) == 25
    assert out_path.with_suffix(".png").exists()
    code, _, _ = run(capsys, "atlas-map", "--x-range", "1,1", "--y-range", "1,1", "--step", "1", "--out", str(out_path), "--no-png")
    assert parse_grid_tsv(out_path.read_text())[0][2] == "FP_EXACT"


def test_atlas_map_degenerate(capsys, tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["atlas-map", "--x-range", "2,1", "--out", str(tmp_path / "g.tsv")])
    assert info.value.code == 2
    code, _, err = run(capsys, "atlas-map", "--step", "0", "--out", str(tmp_path / "g.tsv"))
    assert code == 2 and "positive" in err
