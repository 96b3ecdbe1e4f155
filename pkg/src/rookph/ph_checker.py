"""Run an extender over many pairings of a graph and aggregate a verdict.

Search is the authority: a pairing counts as a failure only when exhaustive
search certifies it nonextendable.  A constructive extender that fails where
search succeeds is logged as a disagreement.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import islice

from .cycle import HamCycle, verify_extension
from .errors import BudgetExceeded, InternalInvariantViolation, InvalidParameter
from .extend_construct import Nonextendable, construct_extension
from .extend_search import DEFAULT_BUDGET, decide_nonextendable
from .graph_core import Graph, build_bishop_on_rook
from .matchings import Pairing, count_pairings, enumerate_pairings, sample_pairings

__all__ = [
    "verify_extension",
    "PhReport",
    "check_ph",
    "explore_bishop_on_rook",
    "EXHAUSTIVE_ORDER_LIMIT",
]

EXHAUSTIVE_ORDER_LIMIT = 12
FAILURES_LISTED = 100
EXTENDERS = ("constructive", "search", "both")

EXTENDED, FAILED, INCONCLUSIVE = "extended", "failed", "inconclusive"


@dataclass
class PhReport:
    family: str
    params: list
    mode: str  # "exhaustive" | "sampled"
    extender: str
    pairings_tested: int = 0
    extended: int = 0
    failure_count: int = 0
    failures: list = field(default_factory=list)  # first FAILURES_LISTED, canonical form
    inconclusive: int = 0
    escalations: int = 0
    disagreements: list = field(default_factory=list)
    verdict: str = ""
    witness: str | None = None
    samples: int | None = None
    seed: int | None = None
    wall_time: float | None = None

    def to_json(self, timing: bool = True) -> dict:
        out = asdict(self)
        if not timing:
            out["wall_time"] = None
        return out

    def dumps(self, timing: bool = True) -> str:
        return json.dumps(self.to_json(timing), indent=2) + "\n"

    @property
    def sound(self) -> bool:
        return self.extended + self.failure_count + self.inconclusive == self.pairings_tested


def pairing_key(pairs) -> str:
    return " ".join(f"{u.label}-{v.label}" for u, v in pairs)


def _by_search(host: Graph, m: Pairing, budget: int) -> str:
    cert = decide_nonextendable(host, m, budget=budget)
    if cert.outcome == "extendable":
        if not verify_extension(host, m, cert.cycle):
            raise InternalInvariantViolation(f"search returned an invalid cycle for {pairing_key(m.pairs)}")
        return EXTENDED
    return FAILED if cert.outcome == "nonextendable" else INCONCLUSIVE


def check_one(host: Graph, m: Pairing, extender: str, budget: int) -> tuple[str, bool, bool]:
    """``(status, escalated, disagreement)`` for a single pairing."""
    if extender == "search":
        return _by_search(host, m, budget), False, False
    try:
        res, broke = construct_extension(host, m, budget=budget), False
    except (InternalInvariantViolation, BudgetExceeded):
        res, broke = None, True
    if isinstance(res, HamCycle) and verify_extension(host, m, res):
        if extender == "both" and _by_search(host, m, budget) == FAILED:
            return EXTENDED, False, True
        return EXTENDED, False, False
    status = _by_search(host, m, budget)
    said_no = isinstance(res, Nonextendable)
    disagree = broke or (status == EXTENDED) or (status == FAILED and not said_no)
    return status, not said_no, disagree


_worker_state: dict = {}


def _init_worker(host: Graph, extender: str, budget: int) -> None:
    _worker_state.update(host=host, extender=extender, budget=budget)


def _run_chunk(chunk: list) -> list:
    host = _worker_state["host"]
    return [
        check_one(host, Pairing(host, pairs), _worker_state["extender"], _worker_state["budget"])
        for pairs in chunk
    ]


def _chunks(it, size: int):
    it = iter(it)
    while True:
        block = list(islice(it, size))
        if not block:
            return
        yield block


def check_ph(
    host: Graph,
    mode: str = "exhaustive",
    extender: str = "constructive",
    *,
    samples: int = 1000,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    exhaustive_limit: int = EXHAUSTIVE_ORDER_LIMIT,
) -> PhReport:
    """Test the pairing-Hamiltonian property of ``host`` over all or sampled pairings."""
    if extender not in EXTENDERS:
        raise InvalidParameter(f"unknown extender {extender!r}")
    if mode == "exhaustive":
        if host.order > exhaustive_limit:
            raise InvalidParameter(
                f"{count_pairings(host.order)} pairings exceed the exhaustive bound "
                f"of {exhaustive_limit} vertices; use sampled mode"
            )
        stream = enumerate_pairings(host)
    elif mode == "sampled":
        stream = sample_pairings(host, samples, seed)
    else:
        raise InvalidParameter(f"unknown mode {mode!r}")

    report = PhReport(
        family=host.family.name,
        params=[str(p) for p in host.family.params],
        mode=mode,
        extender=extender,
        samples=samples if mode == "sampled" else None,
        seed=seed if mode == "sampled" else None,
    )
    t0 = time.perf_counter()

    def record(m_pairs, outcome):
        status, escalated, disagree = outcome
        report.pairings_tested += 1
        key = pairing_key(m_pairs)
        if status == EXTENDED:
            report.extended += 1
        elif status == FAILED:
            report.failure_count += 1
            if len(report.failures) < FAILURES_LISTED:
                report.failures.append(key)
        else:
            report.inconclusive += 1
        report.escalations += escalated
        if disagree:
            report.disagreements.append(key)

    if workers <= 1:
        for m in stream:
            record(m.pairs, check_one(host, m, extender, budget))
    else:
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(host, extender, budget)) as ex:
            blocks = _chunks((m.pairs for m in stream), 256)
            pending = []
            for block in blocks:
                pending.append((block, ex.submit(_run_chunk, block)))
            for block, fut in pending:
                for pairs, outcome in zip(block, fut.result()):
                    record(pairs, outcome)

    report.wall_time = time.perf_counter() - t0
    if report.failure_count:
        report.verdict = "not-PH"
        report.witness = report.failures[0]
    elif report.inconclusive:
        report.verdict = "inconclusive"
    elif mode == "exhaustive":
        report.verdict = "PH-confirmed-at-scope"
    else:
        report.verdict = "sampled-no-counterexample"
    return report


def explore_bishop_on_rook(
    max_order: int = EXHAUSTIVE_ORDER_LIMIT,
    budget: int = DEFAULT_BUDGET,
    *,
    extender: str = "both",
    workers: int = 1,
) -> list[PhReport]:
    """Exhaustive verdicts for every bishop-on-a-rook board of even order <= max_order."""
    if max_order > EXHAUSTIVE_ORDER_LIMIT:
        raise InvalidParameter(f"max_order above the exhaustive bound of {EXHAUSTIVE_ORDER_LIMIT}")
    boards = sorted(
        ((m1 * m2, m1, m2) for m1 in range(1, max_order + 1) for m2 in range(1, max_order + 1)
         if m1 * m2 <= max_order and m1 * m2 % 2 == 0),
    )
    return [
        check_ph(build_bishop_on_rook(m1, m2), "exhaustive", extender, budget=budget, workers=workers)
        for _, m1, m2 in boards
    ]
