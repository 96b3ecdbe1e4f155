import json
import subprocess
import sys

import pytest

from rookph.cli import main
from rookph.graph_core import build_rook, load_graph
from rookph.matchings import load_pairing


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def board(tmp_path, capsys):
    gpath = tmp_path / "g.txt"
    assert run(capsys, "gen", "graph", "--family", "rook", "--m1", 4, "--m2", 5, "-o", gpath)[0] == 0
    return gpath


def test_gen_graph_round_trip(board):
    assert load_graph(board) == build_rook(4, 5)


def test_extend_then_verify(board, tmp_path, capsys):
    ppath, cpath = tmp_path / "m.txt", tmp_path / "h.txt"
    assert run(capsys, "gen", "pairing", "--graph", board, "--random", "--seed", 11, "-o", ppath)[0] == 0
    assert run(capsys, "extend", "--graph", board, "--pairing", ppath, "-o", cpath)[0] == 0
    code, out, _ = run(capsys, "verify", "--graph", board, "--pairing", ppath, "--cycle", cpath)
    assert (code, out.strip()) == (0, "ok")
    assert "pairing-edges: 10, graph-edges: 10" in cpath.read_text()

    labels = cpath.read_text().splitlines()[0].split()
    labels[1], labels[2] = labels[2], labels[1]
    cpath.write_text(" ".join(labels) + "\n")
    code, out, _ = run(capsys, "verify", "--graph", board, "--pairing", ppath, "--cycle", cpath)
    assert (code, out.strip()) == (1, "invalid")

    assert run(capsys, "extend", "--graph", board, "--pairing", ppath, "--method", "search", "-o", cpath)[0] == 0
    assert run(capsys, "verify", "--graph", board, "--pairing", ppath, "--cycle", cpath)[0] == 0


def test_gen_all_pairings(tmp_path, capsys):
    gpath = tmp_path / "g.txt"
    run(capsys, "gen", "graph", "--family", "knn", "--m1", 3, "-o", gpath)
    outdir = tmp_path / "all"
    assert run(capsys, "gen", "pairing", "--graph", gpath, "--all", "-o", outdir)[0] == 0
    files = sorted(outdir.iterdir())
    assert len(files) == 15
    g = load_graph(gpath)
    assert len({load_pairing(f, g) for f in files}) == 15
    assert run(capsys, "gen", "pairing", "--graph", gpath, "--all")[0] == 2


def test_nonextendable_pairing_exit_code(tmp_path, capsys):
    gpath, ppath = tmp_path / "g.txt", tmp_path / "m.txt"
    run(capsys, "gen", "graph", "--family", "rook", "--m1", 2, "--m2", 3, "-o", gpath)
    ppath.write_text("0.0 1.0\n0.1 1.1\n0.2 1.2\n")
    code, out, _ = run(capsys, "extend", "--graph", gpath, "--pairing", ppath)
    assert code == 1
    assert json.loads(out)["outcome"] == "nonextendable"


def test_certify_cut(capsys):
    code, out, _ = run(capsys, "certify-cut", "--m2", 3)
    assert code == 0 and json.loads(out)["outcome"] == "nonextendable"
    assert run(capsys, "certify-cut", "--m2", 4)[0] == 2
    assert run(capsys, "certify-cut", "--m2", 7, "--budget", 3)[0] == 3


def test_check_ph_outputs_identical(tmp_path, capsys):
    gpath = tmp_path / "g.txt"
    run(capsys, "gen", "graph", "--family", "rook", "--m1", 2, "--m2", 3, "-o", gpath)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "check-ph", "--graph", gpath, "--exhaustive", "-o", a)[0] == 0
    assert run(capsys, "check-ph", "--graph", gpath, "--exhaustive", "-o", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["verdict"] == "not-PH"
    run(capsys, "check-ph", "--graph", gpath, "--sample", 5, "--timing", "-o", a)
    assert json.loads(a.read_text())["wall_time"] > 0


def test_usage_errors(tmp_path, capsys):
    assert run(capsys, "verify", "--graph", tmp_path / "missing", "--pairing", "x", "--cycle", "y")[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("graph rook 2 2\nv 0.0\ne 0.0 9.9\n")
    assert run(capsys, "check-ph", "--graph", bad, "--exhaustive")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["gen", "graph", "--family", "moon", "--m1", "2"])
    assert info.value.code == 2


def test_explore_bor_small(capsys):
    code, out, _ = run(capsys, "explore-bor", "--max-order", 4)
    assert code == 0
    assert [r["params"] for r in json.loads(out)] == [["1", "2"], ["2", "1"], ["1", "4"], ["2", "2"], ["4", "1"]]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "rookph", "certify-cut", "--m2", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["outcome"] == "nonextendable"
