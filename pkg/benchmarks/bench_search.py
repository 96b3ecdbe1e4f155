#!/usr/bin/env python3
"""Compare the numba-compiled search kernel with the plain numpy one.

Workloads:
- exhaustive nonextendability certificates for cut pairings of rook(2, m2)
- search over seeded random pairings of larger rook boards
- every pairing of rook(4, 3)

Run: python3 benchmarks/bench_search.py [--samples N]
"""

import argparse
import time

import numpy as np

from rookph import _kernels
from rookph.graph_core import build_rook
from rookph.matchings import cut_pairing, enumerate_pairings, sample_pairings


def prepare(g, pairings):
    adj = np.ascontiguousarray(g.adjacency_matrix(), dtype=np.uint8)
    return [(adj, m.partner_array()) for m in pairings]


def run(kernel, cases, budget):
    nodes = 0
    t0 = time.perf_counter()
    for adj, partner in cases:
        status, _, stats = kernel(adj, partner, True, True, True, budget)
        nodes += int(stats[0])
    return time.perf_counter() - t0, nodes


def workloads(samples, max_cut):
    for m2 in range(7, max_cut + 1, 2):
        yield f"cut pairing rook(2,{m2})", prepare(build_rook(2, m2), [cut_pairing(m2)])
    for m1, m2 in ((4, 8), (6, 6), (4, 11)):
        g = build_rook(m1, m2)
        yield f"{samples} random pairings rook({m1},{m2})", prepare(g, sample_pairings(g, samples, 1))
    g = build_rook(4, 3)
    yield "all 10395 pairings rook(4,3)", prepare(g, enumerate_pairings(g))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--max-cut", type=int, default=9, help="largest odd m2 for the cut workload (11 takes ~2 min on numpy)")
    ap.add_argument("--budget", type=int, default=50_000_000)
    args = ap.parse_args()

    pure = _kernels.forced_cycle_search_py
    if not _kernels.numba_available():
        print("numba is not installed; only the numpy kernel can run")
        jit = None
    else:
        t0 = time.perf_counter()
        jit = _kernels.jitted_search()
        cases = prepare(build_rook(2, 3), [cut_pairing(3)])
        run(jit, cases, args.budget)
        print(f"numba compile / cache load: {time.perf_counter() - t0:.2f}s")

    print(f"{'workload':<36}{'nodes':>12}{'numpy s':>10}{'numba s':>10}{'speedup':>9}")
    for name, cases in workloads(args.samples, args.max_cut):
        t_pure, nodes = run(pure, cases, args.budget)
        if jit is None:
            print(f"{name:<36}{nodes:>12}{t_pure:>10.3f}")
            continue
        t_jit, nodes_jit = run(jit, cases, args.budget)
        assert nodes_jit == nodes
        print(f"{name:<36}{nodes:>12}{t_pure:>10.3f}{t_jit:>10.3f}{t_pure / t_jit:>8.1f}x")


if __name__ == "__main__":
    main()
