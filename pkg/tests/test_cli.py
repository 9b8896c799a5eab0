"""Command-line surface and exit codes"""
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from factorkit.cli import build_arg_parser, main
from factorkit.generators import bowtie, complete, cycle, gm, hm
from factorkit.graph import parse_edge_list, serialize_edge_list


@pytest.fixture
def graph_file(tmp_path):
    def write(g, name="g.txt"):
        path = tmp_path / name
        path.write_text(serialize_edge_list(g) + "\n")
        return str(path)

    return write


def run(argv, capsys):
    code = main(argv + ["--jobs", "1"])
    return code, capsys.readouterr().out


@pytest.mark.parametrize(
    "g, param, value",
    [
        (hm(3), "bind", "4/3"),
        (complete(6), "t", "inf"),
        (gm(4), "t", "3/4"),
        (bowtie(), "iprime", "3"),
    ],
)
def test_compute(graph_file, capsys, g, param, value):
    code, out = run(["compute", "--input", graph_file(g), "--param", param], capsys)
    assert code == 0
    assert out.splitlines()[0] == value


def test_compute_prints_sorted_witness_and_json(graph_file, tmp_path, capsys):
    target = tmp_path / "result.json"
    code, out = run(["compute", "--input", graph_file(bowtie()), "--param", "iprime", "--json", str(target)], capsys)
    assert code == 0
    assert out.splitlines()[1] == "witness: [0, 2, 3]"
    assert json.loads(target.read_text()) == {"parameter": "isolated_toughness_variant", "value": "3", "witness": [0, 2, 3]}


def test_factor_found(graph_file, capsys):
    code, out = run(["factor", "--input", graph_file(cycle(5)), "--min-cycle", "5"], capsys)
    assert code == 0
    assert out.splitlines() == ["FACTOR", "cycle(0 1 2 3 4)"]


@pytest.mark.parametrize("g, line", [(bowtie(), "S = {}, c_tc = 1"), (hm(2), "S = {0}, c_tc = 2")])
def test_factor_missing(graph_file, capsys, g, line):
    code, out = run(["factor", "--input", graph_file(g)], capsys)
    assert code == 1
    assert out.splitlines() == ["NO-FACTOR", line]


def test_factor_with_triangles_allowed(graph_file, capsys):
    star = parse_edge_list("n 4\n0 1\n0 2\n0 3\n")
    code, out = run(["factor", "--input", graph_file(star), "--min-cycle", "3"], capsys)
    assert code == 1
    assert out.splitlines() == ["NO-FACTOR", "S = {0}, iso = 3"]


def test_factor_writes_decision_json(graph_file, tmp_path, capsys):
    star = parse_edge_list("n 4\n0 1\n0 2\n0 3\n")
    target = tmp_path / "decision.json"
    code, _ = run(["factor", "--input", graph_file(star), "--min-cycle", "3", "--json", str(target)], capsys)
    assert code == 1
    assert json.loads(target.read_text()) == {"exists": False, "violation": {"iso": 3, "set": [0]}}
    code, _ = run(["factor", "--input", graph_file(cycle(5)), "--json", str(target)], capsys)
    assert code == 0
    assert json.loads(target.read_text())["decomposition"]["cycles"] == [[0, 1, 2, 3, 4]]


@pytest.mark.parametrize(
    "argv, order, size",
    [
        (["--family", "gm", "--m", "3"], 5, 7),
        (["--family", "hm", "--m", "2"], 7, 12),
        (["--family", "cycle", "--n", "7"], 7, 7),
    ],
)
def test_gen(tmp_path, capsys, argv, order, size):
    target = tmp_path / "out.txt"
    code, _ = run(["gen", *argv, "--output", str(target)], capsys)
    assert code == 0
    g = parse_edge_list(target.read_text())
    assert (g.order, g.size) == (order, size)


def test_gen_seeded_is_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.txt", tmp_path / "b.txt"]
    for p in paths:
        run(["gen", "--family", "random", "--n", "9", "--p", "0.4", "--seed", "17", "--output", str(p)], capsys)
    assert paths[0].read_text() == paths[1].read_text()


def test_input_errors_exit_2(tmp_path, graph_file, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("n 3\n0 0\n")
    assert run(["compute", "--input", str(bad)], capsys)[0] == 2
    assert run(["compute", "--input", str(tmp_path / "missing.txt")], capsys)[0] == 2
    assert run(["compute", "--input", graph_file(cycle(9)), "--cap", "8"], capsys)[0] == 2
    assert run(["gen", "--family", "cycle", "--n", "2"], capsys)[0] == 2
    assert run(["exceptions", "--order", "6"], capsys)[0] == 2


@pytest.mark.parametrize("content", [b"n 2\n\xff\n", "n \u00b3\n".encode("utf-8"), "n 2\n0 \u0661\n".encode("utf-8")])
def test_undecodable_or_non_ascii_input_exits_2(tmp_path, capsys, content):
    bad = tmp_path / "bad.txt"
    bad.write_bytes(content)
    assert run(["compute", "--input", str(bad)], capsys)[0] == 2


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as info:
        main(["compute"])
    assert info.value.code == 2


def test_sweep_writes_json_lines(tmp_path, capsys):
    target = tmp_path / "rows.jsonl"
    code, _ = run(["sweep", "--family", "complete", "--sizes", "4", "5", "--output", str(target)], capsys)
    assert code == 0
    rows = [json.loads(line) for line in target.read_text().splitlines()]
    assert [(r["n"], r["t"], r["factor"]) for r in rows] == [(4, "inf", True), (5, "inf", True)]


@pytest.mark.slow
def test_verify_paper_small_run(tmp_path, capsys):
    report = tmp_path / "report.json"
    code, out = run(["verify-paper", "--m-max", "4", "--corpus-size", "20", "--large-count", "0",
                     "--no-exceptions", "--json", str(report)], capsys)
    assert code == 0
    assert "CLAIM VERIFICATION" in out
    body = json.loads(report.read_text())
    assert body["summary"]["fail"] == 0 and body["summary"]["skipped"] == 0


@pytest.mark.parametrize("command", ["verify-paper", "verify-claims"])
def test_verify_command_and_alias_parse(command):
    args = build_arg_parser().parse_args([command, "--m-max", "3", "--no-exceptions"])
    assert args.m_max == 3 and args.no_exceptions


@pytest.mark.parametrize(
    "argv, first_line, code",
    [
        (["compute", "--param", "bind"], "4/3", 0),
        (["factor"], "NO-FACTOR", 1),
    ],
)
def test_module_entry_point_with_worker_processes(graph_file, argv, first_line, code):
    root = Path(__file__).resolve().parents[1]
    env = {**os.environ, "PYTHONPATH": str(root)}
    cmd = [sys.executable, "-m", "factorkit", argv[0], "--input", graph_file(hm(3)), *argv[1:], "--jobs", "2"]
    proc = subprocess.run(cmd, cwd=root, env=env, capture_output=True, text=True, timeout=300)
    assert proc.returncode == code, proc.stderr
    assert proc.stdout.splitlines()[0] == first_line
