"""Exact search for Hamiltonian cycles of K_G that contain a given pairing.

Used as the oracle behind every constructive extender, as the extender for
graphs that have no construction, and as the certifier of nonextendability.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .cycle import HamCycle
from .errors import BudgetExceeded, InvalidParameter
from .graph_core import Graph
from .matchings import Pairing

__all__ = [
    "DEFAULT_BUDGET",
    "Pruning",
    "ForcedInstance",
    "Certificate",
    "extend_by_search",
    "decide_nonextendable",
    "direct_search",
]

DEFAULT_BUDGET = 20_000_000


@dataclass(frozen=True)
class Pruning:
    """Exactness-preserving prunes; each can be switched off for testing.

    degree: every unvisited endpoint keeps a usable host edge.
    connectivity: unvisited pairs stay reachable from the path's free end.
    closure: the start vertex keeps an unvisited neighbour, so the cycle
    can still be closed once every pair is placed.
    """

    degree: bool = True
    connectivity: bool = True
    closure: bool = True

    @classmethod
    def off(cls) -> "Pruning":
        return cls(False, False, False)


@dataclass(frozen=True)
class ForcedInstance:
    host: Graph
    forced: Pairing

    def __post_init__(self):
        if self.host.order % 2:
            raise InvalidParameter("host must have even order")
        if self.forced.ground.vertices != self.host.vertices:
            raise InvalidParameter("pairing does not cover the host's vertex set")

    @property
    def effective_edges(self) -> frozenset:
        return self.host.edges | frozenset(self.forced.pairs)

    def describe(self) -> dict:
        return {
            "graph": str(self.host.family),
            "pairing": [[u.label, v.label] for u, v in self.forced.pairs],
        }


@dataclass
class Certificate:
    """Outcome of an exhaustive search for one instance."""

    instance: ForcedInstance
    outcome: str  # "extendable" | "nonextendable" | "inconclusive"
    cycle: HamCycle | None
    nodes_visited: int
    prunes: int
    budget: int

    def to_json(self) -> dict:
        out = {
            "instance": self.instance.describe(),
            "outcome": self.outcome,
        }
        if self.cycle is not None:
            out["cycle"] = [v.label for v in self.cycle.order]
        out["nodes_visited"] = self.nodes_visited
        out["prunes"] = self.prunes
        out["budget"] = self.budget
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def _run(host: Graph, forced: Pairing, budget: int, pruning: Pruning, use_numba):
    inst = ForcedInstance(host, forced)
    adj = np.ascontiguousarray(host.adjacency_matrix(), dtype=np.uint8)
    partner = forced.partner_array()
    kernel = _kernels.get_search_kernel(use_numba)
    status, order, stats = kernel(
        adj, partner, pruning.degree, pruning.connectivity, pruning.closure, int(budget)
    )
    cycle = None
    if status == _kernels.FOUND:
        cycle = HamCycle(host.vertices[i] for i in order)
    return inst, int(status), cycle, int(stats[0]), int(stats[1])


def extend_by_search(
    host: Graph,
    forced: Pairing,
    *,
    budget: int = DEFAULT_BUDGET,
    pruning: Pruning = Pruning(),
    use_numba: bool | None = None,
) -> HamCycle | None:
    """A cycle through ``forced`` using host edges otherwise, or None if none exists.

    Deterministic for a given input.  Raises :class:`BudgetExceeded` rather
    than returning None when the search is cut short.
    """
    _, status, cycle, nodes, _ = _run(host, forced, budget, pruning, use_numba)
    if status == _kernels.OVER_BUDGET:
        raise BudgetExceeded(nodes, budget)
    return cycle


def decide_nonextendable(
    host: Graph,
    forced: Pairing,
    *,
    budget: int = DEFAULT_BUDGET,
    pruning: Pruning = Pruning(),
    use_numba: bool | None = None,
) -> Certificate:
    inst, status, cycle, nodes, prunes = _run(host, forced, budget, pruning, use_numba)
    outcome = {
        _kernels.FOUND: "extendable",
        _kernels.EXHAUSTED: "nonextendable",
        _kernels.OVER_BUDGET: "inconclusive",
    }[status]
    return Certificate(inst, outcome, cycle, nodes, prunes, int(budget))


def direct_search(host: Graph, forced: Pairing) -> HamCycle | None:
    """Plain vertex-by-vertex backtracking on E(host) + forced, no contraction.

    Slow; kept as an independent cross-check of the contracted kernel.
    """
    vs = host.vertices
    n = len(vs)
    if n < 3:
        return None
    partner = {v: forced.partner(v) for v in vs}
    nbrs = {v: sorted(set(host.neighbors(v)) | {partner[v]}) for v in vs}
    start = vs[0]
    path = [start]
    on_path = {start}

    def closes(v, prev) -> bool:
        if start not in nbrs[v]:
            return False
        # v and start must each have their pair edge among their two cycle edges
        return partner[v] in (prev, start) and partner[start] in (path[1], v)

    def rec() -> bool:
        v = path[-1]
        prev = path[-2] if len(path) > 1 else None
        if len(path) == n:
            return closes(v, prev)
        if prev is not None and partner[v] != prev:
            nxt = [partner[v]]
        else:
            nxt = nbrs[v]
        for w in nxt:
            if w in on_path:
                continue
            path.append(w)
            on_path.add(w)
            if rec():
                return True
            path.pop()
            on_path.discard(w)
        return False

    return HamCycle(path) if rec() else None

