"""End-to-end acceptance criteria, one test each, with their time limits.

Each test appends a PASS/FAIL line that the terminal summary prints.
"""

import json
import os
import subprocess
import sys
import time

import pytest

from conftest import ACCEPTANCE_LINES
from rookph.cli import main
from rookph.cycle import HamCycle, verify_extension
from rookph.extend_construct import _extend_knn, extend_4xm_odd
from rookph.extend_search import Pruning, direct_search, extend_by_search
from rookph.graph_core import (
    Vertex,
    build_complete,
    build_complete_bipartite,
    build_hypercube,
    build_petersen,
    build_rook,
    build_bishop_on_rook,
)
from rookph.matchings import ColumnClass, Pairing, count_pairings, enumerate_pairings
from rookph.ph_checker import check_ph

pytestmark = pytest.mark.usefixtures("warm_kernel")


class Criterion:
    def __init__(self, number: int, title: str, limit: float | None):
        self.number, self.title, self.limit = number, title, limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        ok = exc_type is None and (self.limit is None or elapsed < self.limit)
        limit = f" (limit {self.limit:g}s)" if self.limit else ""
        ACCEPTANCE_LINES.append(
            f"{'PASS' if ok else 'FAIL'}  {self.number:>2}. {self.title}: {elapsed:.2f}s{limit}"
        )
        if exc_type is None and self.limit is not None:
            assert elapsed < self.limit, f"took {elapsed:.1f}s"
        return False


def _cells(text):
    return [Vertex("abcd".index(t[0]), int(t[1:]) - 1) for t in text.split()]


def test_cut_pairing_certificates(capsys):
    for m2, limit in ((3, 1.0), (5, 60.0)):
        with Criterion(1, f"certify-cut --m2 {m2} reports nonextendable", limit):
            code = main(["certify-cut", "--m2", str(m2)])
            out = json.loads(capsys.readouterr().out)
            assert code == 0
            assert out["outcome"] == "nonextendable"
            assert out["instance"]["graph"] == f"rook(2,{m2})"
        # a fresh process, so interpreter start-up and imports are included
        env = dict(os.environ, ROOKPH_NUMBA="0")
        with Criterion(1, f"certify-cut --m2 {m2}, cold process, numpy kernel", limit):
            res = subprocess.run([sys.executable, "-m", "rookph", "certify-cut", "--m2", str(m2)],
                                 capture_output=True, text=True, env=env)
            assert res.returncode == 0
            assert json.loads(res.stdout)["outcome"] == "nonextendable"


def test_exhaustive_four_by_three():
    with Criterion(2, "exhaustive check of rook(4,3), constructive extender", 300):
        g = build_rook(4, 3)
        rep = check_ph(g, "exhaustive", "constructive")
        assert rep.pairings_tested == 10395
        assert rep.extended == 10395
        assert rep.escalations == 0
        assert rep.disagreements == []
        for m in enumerate_pairings(g):
            assert verify_extension(g, m, extend_4xm_odd(3, m))


def test_sampled_four_by_odd():
    with Criterion(3, "1000 random pairings each of rook(4,5), rook(4,7), rook(4,9)", 600):
        for m2 in (5, 7, 9):
            rep = check_ph(build_rook(4, m2), "sampled", "constructive", samples=1000, seed=m2)
            assert rep.pairings_tested == 1000
            assert rep.extended == 1000
            assert rep.escalations == 0 and rep.disagreements == []


def test_exhaustive_knn():
    with Criterion(4, "extend_knn on every pairing of K_{n,n}, n = 2..5", 60):
        counts = []
        for n in range(2, 6):
            g = build_complete_bipartite(n, n)
            k = 0
            for m in enumerate_pairings(g):
                h, depth = _extend_knn(n, m)
                assert verify_extension(g, m, h)
                assert depth <= n - 2
                k += 1
            counts.append(k)
        assert counts == [3, 15, 105, 945]


def test_small_profile_reference_cycles():
    with Criterion(5, "profiles (1,1,1) and (2,1,0) give the reference cycles", None):
        for classes, expected in (
            ((0, 1, 2), "a1 b1 c1 d1 d3 a3 c3 b3 b2 d2 c2 a2"),
            ((0, 0, 1), "a1 b1 b2 a2 a3 c3 b3 d3 d2 c2 c1 d1"),
        ):
            g = build_rook(4, 3)
            m = Pairing(g, [(Vertex(a, c), Vertex(b, c))
                            for c, k in enumerate(classes) for a, b in ColumnClass(k).pairs])
            h = extend_4xm_odd(3, m)
            assert h.canonical() == HamCycle(_cells(expected)).canonical()


def test_known_small_graphs():
    with Criterion(6, "K4, K3,3, Q3 are PH; Petersen and rook(2,3) are not", 300):
        for g in (build_complete(4), build_complete_bipartite(3, 3), build_hypercube(3)):
            rep = check_ph(g, "exhaustive", "both")
            assert rep.verdict == "PH-confirmed-at-scope", g.family
        for g in (build_petersen(), build_rook(2, 3)):
            rep = check_ph(g, "exhaustive", "both")
            assert rep.verdict == "not-PH", g.family
            assert rep.disagreements == []


def test_rook_characterization():
    with Criterion(7, "rook(m1,m2), m1*m2 even <= 12: not-PH iff {m1,m2} = {2, odd}", None):
        boards = [(a, b) for a in range(1, 13) for b in range(1, 13) if a * b <= 12 and a * b % 2 == 0]
        assert len(boards) == 23
        for a, b in boards:
            rep = check_ph(build_rook(a, b), "exhaustive", "constructive")
            expect_fail = (a == 2 and b % 2 == 1) or (b == 2 and a % 2 == 1)
            assert rep.verdict == ("not-PH" if expect_fail else "PH-confirmed-at-scope"), (a, b)
            assert rep.disagreements == [] and rep.inconclusive == 0


def test_search_cross_checks():
    with Criterion(8, "contracted vs direct search, pruning on vs off", None):
        graphs = [build_rook(2, 2), build_rook(2, 3), build_rook(4, 3)]
        graphs += [build_complete_bipartite(n, n) for n in (2, 3, 4)]
        for g in graphs:
            for m in enumerate_pairings(g):
                a = extend_by_search(g, m)
                b = direct_search(g, m)
                assert (a is None) == (b is None), (g.family, m)
        small = [build_rook(a, b) for a, b in ((1, 4), (2, 2), (2, 3), (2, 4), (4, 2), (1, 8), (1, 6))]
        small += [build_complete_bipartite(n, n) for n in (2, 3, 4)]
        small += [build_hypercube(3), build_bishop_on_rook(2, 4), build_bishop_on_rook(4, 2)]
        for g in small:
            assert g.order <= 8
            for m in enumerate_pairings(g):
                on = extend_by_search(g, m, pruning=Pruning()) is not None
                off = extend_by_search(g, m, pruning=Pruning.off()) is not None
                assert on == off, (g.family, m)


def test_pairing_counts():
    with Criterion(9, "enumerate_pairings gives (n-1)!! pairings, n = 2..12", None):
        for n in range(2, 13, 2):
            got = sum(1 for _ in enumerate_pairings(build_complete(n)))
            assert got == count_pairings(n)
            assert got == [1, 3, 15, 105, 945, 10395][n // 2 - 1]


def test_explore_bishop_on_rook(capsys):
    with Criterion(10, "explore-bor --max-order 12: no inconclusive, (2,2) and (2,3) PH", 600):
        code = main(["explore-bor", "--max-order", "12"])
        reps = json.loads(capsys.readouterr().out)
        assert code == 0
        assert all(r["inconclusive"] == 0 and not r["disagreements"] for r in reps)
        verdict = {tuple(r["params"]): r["verdict"] for r in reps}
        assert verdict[("2", "2")] == "PH-confirmed-at-scope"
        assert verdict[("2", "3")] == "PH-confirmed-at-scope"
