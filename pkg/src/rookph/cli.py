"""Command-line interface.

Exit codes: 0 success, 1 verification failed or no extension exists,
2 usage or input error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .cycle import HamCycle, format_cycle, load_cycle, verify_extension
from .errors import BudgetExceeded, InvalidParameter, NoPairingExists
from .extend_construct import Nonextendable, construct_extension
from .extend_search import DEFAULT_BUDGET, decide_nonextendable
from .graph_core import (
    build_bishop_on_rook,
    build_complete,
    build_complete_bipartite,
    build_hypercube,
    build_rook,
    format_graph,
    load_graph,
)
from .matchings import (
    cut_pairing,
    enumerate_pairings,
    format_pairing,
    load_pairing,
    random_pairing,
)
from .ph_checker import check_ph, explore_bishop_on_rook

log = logging.getLogger("rookph")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _build(family: str, m1: int, m2: int | None):
    if family == "rook":
        return build_rook(m1, m2 if m2 is not None else m1)
    if family == "bor":
        return build_bishop_on_rook(m1, m2 if m2 is not None else m1)
    if family == "knn":
        return build_complete_bipartite(m1, m2 if m2 is not None else m1)
    if family == "hypercube":
        return build_hypercube(m1)
    if family == "complete":
        return build_complete(m1)
    raise UsageError(f"unknown family {family!r}")


def cmd_gen_graph(args) -> int:
    _emit(format_graph(_build(args.family, args.m1, args.m2)), args.out)
    return EXIT_OK


def cmd_gen_pairing(args) -> int:
    g = load_graph(args.graph)
    if args.all:
        if not args.out:
            raise UsageError("--all writes one file per pairing and needs --out DIR")
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        n = 0
        for n, m in enumerate(enumerate_pairings(g), 1):
            (outdir / f"pairing_{n:06d}.txt").write_text(format_pairing(m))
        log.info("wrote %d pairings to %s", n, outdir)
    else:
        _emit(format_pairing(random_pairing(g, args.seed)), args.out)
    return EXIT_OK


def cmd_extend(args) -> int:
    g = load_graph(args.graph)
    m = load_pairing(args.pairing, g)
    if args.method == "search":
        cert = decide_nonextendable(g, m, budget=args.budget)
        if cert.outcome == "inconclusive":
            _emit(cert.dumps(), args.out)
            return EXIT_BUDGET
        res = cert.cycle if cert.outcome == "extendable" else Nonextendable(m, "exhaustive search", cert)
    else:
        res = construct_extension(g, m, budget=args.budget)
    if isinstance(res, HamCycle):
        _emit(format_cycle(res, m), args.out)
        return EXIT_OK
    cert = res.certificate or decide_nonextendable(g, m, budget=args.budget)
    _emit(cert.dumps(), args.out)
    return EXIT_BUDGET if cert.outcome == "inconclusive" else EXIT_FAIL


def cmd_verify(args) -> int:
    g = load_graph(args.graph)
    m = load_pairing(args.pairing, g)
    try:
        h = load_cycle(args.cycle)
    except ValueError as exc:
        print(f"invalid: {exc}")
        return EXIT_FAIL
    ok = verify_extension(g, m, h)
    print("ok" if ok else "invalid")
    return EXIT_OK if ok else EXIT_FAIL


def _report_exit(reports) -> int:
    if any(r.disagreements for r in reports):
        return EXIT_FAIL
    if any(r.inconclusive for r in reports):
        return EXIT_BUDGET
    return EXIT_OK


def cmd_check_ph(args) -> int:
    g = load_graph(args.graph)
    mode = "exhaustive" if args.exhaustive else "sampled"
    rep = check_ph(
        g, mode, args.extender, samples=args.sample or 0, seed=args.seed,
        budget=args.budget, workers=args.workers,
    )
    log.info("%s: %s in %.2fs", g.family, rep.verdict, rep.wall_time)
    _emit(rep.dumps(timing=args.timing), args.out)
    return _report_exit([rep])


def cmd_certify_cut(args) -> int:
    m = cut_pairing(args.m2)
    cert = decide_nonextendable(build_rook(2, args.m2), m, budget=args.budget)
    _emit(cert.dumps(), args.out)
    if cert.outcome == "inconclusive":
        return EXIT_BUDGET
    return EXIT_OK if cert.outcome == "nonextendable" else EXIT_FAIL


def cmd_explore_bor(args) -> int:
    reps = explore_bishop_on_rook(args.max_order, args.budget, workers=args.workers)
    for r in reps:
        log.info("bor(%s): %s", ",".join(r.params), r.verdict)
    text = json.dumps([r.to_json(args.timing) for r in reps], indent=2) + "\n"
    _emit(text, args.out)
    return _report_exit(reps)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rookph",
        description="Extend pairings of rook-type graphs to Hamiltonian cycles and check the PH-property.",
        epilog=(
            "File formats: graphs are a 'graph <family> <params>' header then 'v r.c' and "
            "'e r.c r.c' lines; pairings are one 'r.c r.c' pair per line; cycles are one "
            "line of space-separated 'r.c' labels. '#' starts a comment."
        ),
    )
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def budget(sp):
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node limit per pairing")

    def out(sp):
        sp.add_argument("-o", "--out", help="output path (default: stdout)")

    gen = sub.add_parser("gen", help="generate graphs or pairings")
    gsub = gen.add_subparsers(dest="what", required=True)
    gg = gsub.add_parser("graph", help="write a graph file")
    gg.add_argument("--family", required=True, choices=["rook", "bor", "knn", "hypercube", "complete"])
    gg.add_argument("--m1", type=int, required=True, help="rows / part size / dimension / order")
    gg.add_argument("--m2", type=int, help="columns / second part size (default: m1)")
    out(gg)
    gg.set_defaults(func=cmd_gen_graph)

    gp = gsub.add_parser("pairing", help="write pairing file(s) for a graph")
    gp.add_argument("--graph", required=True)
    how = gp.add_mutually_exclusive_group(required=True)
    how.add_argument("--all", action="store_true", help="every pairing, one file each, into --out DIR")
    how.add_argument("--random", action="store_true", help="one uniform random pairing")
    gp.add_argument("--seed", type=int, default=0)
    out(gp)
    gp.set_defaults(func=cmd_gen_pairing)

    ex = sub.add_parser("extend", help="extend a pairing to a Hamiltonian cycle")
    ex.add_argument("--graph", required=True)
    ex.add_argument("--pairing", required=True)
    ex.add_argument("--method", choices=["construct", "search"], default="construct")
    budget(ex)
    out(ex)
    ex.set_defaults(func=cmd_extend)

    ve = sub.add_parser("verify", help="check a cycle against a graph and pairing (exit 0/1)")
    ve.add_argument("--graph", required=True)
    ve.add_argument("--pairing", required=True)
    ve.add_argument("--cycle", required=True)
    ve.set_defaults(func=cmd_verify)

    ch = sub.add_parser("check-ph", help="test the PH-property over all or sampled pairings")
    ch.add_argument("--graph", required=True)
    scope = ch.add_mutually_exclusive_group(required=True)
    scope.add_argument("--exhaustive", action="store_true")
    scope.add_argument("--sample", type=int, metavar="N")
    ch.add_argument("--seed", type=int, default=0)
    ch.add_argument("--extender", choices=["constructive", "search", "both"], default="constructive")
    ch.add_argument("--workers", type=int, default=1)
    ch.add_argument("--timing", action="store_true", help="record wall time in the report")
    budget(ch)
    out(ch)
    ch.set_defaults(func=cmd_check_ph)

    cc = sub.add_parser("certify-cut", help="certify that the cut pairing of rook(2, m2) does not extend")
    cc.add_argument("--m2", type=int, required=True, help="odd number of columns")
    budget(cc)
    out(cc)
    cc.set_defaults(func=cmd_certify_cut)

    eb = sub.add_parser("explore-bor", help="exhaustive PH verdicts for bishop-on-a-rook boards")
    eb.add_argument("--max-order", type=int, default=12)
    eb.add_argument("--workers", type=int, default=1)
    eb.add_argument("--timing", action="store_true", help="record wall time in the reports")
    budget(eb)
    out(eb)
    eb.set_defaults(func=cmd_explore_bor)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"rookph: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, InvalidParameter, NoPairingExists, ValueError, OSError) as exc:
        print(f"rookph: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
