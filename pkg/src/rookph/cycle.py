"""Hamiltonian cycles of the complete graph on a vertex set, and the verifier."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

from .graph_core import Graph, Vertex, as_map
from .matchings import Pairing

__all__ = ["HamCycle", "verify_extension", "format_cycle", "parse_cycle", "load_cycle", "dump_cycle"]


class HamCycle:
    """Cyclic vertex sequence; the closing edge is implicit.

    Two cycles compare equal when one is a rotation or reflection of the other.
    """

    __slots__ = ("order", "_canon")

    def __init__(self, order: Iterable):
        self.order = tuple(Vertex(*v) for v in order)
        self._canon = None

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def edges(self) -> list[tuple[Vertex, Vertex]]:
        o = self.order
        return [(o[i], o[(i + 1) % len(o)]) for i in range(len(o))]

    def canonical(self) -> tuple[Vertex, ...]:
        """Least rotation/reflection that starts at the least vertex."""
        if self._canon is None:
            o = self.order
            if not o:
                self._canon = ()
            else:
                i = o.index(min(o))
                fwd = o[i:] + o[:i]
                back = (fwd[0],) + tuple(reversed(fwd[1:]))
                self._canon = min(fwd, back)
        return self._canon

    def relabel(self, mapping) -> "HamCycle":
        f = as_map(mapping)
        return HamCycle(f(v) for v in self.order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HamCycle):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())

    def __repr__(self) -> str:
        return "HamCycle(" + " ".join(v.label for v in self.order) + ")"


def verify_extension(host: Graph, m: Pairing, h: HamCycle) -> bool:
    """True iff ``h`` is a Hamiltonian cycle through every pair of ``m`` whose
    remaining edges all belong to ``host``."""
    order = h.order
    if len(order) < 3 or len(order) != host.order:
        return False
    if set(order) != set(host.vertices):
        return False
    cycle_edges = {frozenset(e) for e in h.edges()}
    pairing_edges = {frozenset(p) for p in m.pairs}
    if not pairing_edges <= cycle_edges:
        return False
    return all(host.has_edge(*tuple(e)) for e in cycle_edges - pairing_edges)


def format_cycle(h: HamCycle, m: Pairing | None = None) -> str:
    out = " ".join(v.label for v in h.order) + "\n"
    if m is not None:
        k = len(m.pairs)
        out += f"# pairing-edges: {k}, graph-edges: {len(h) - k}\n"
    return out


def parse_cycle(text: str) -> HamCycle:
    labels: list[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        labels.extend(line.split())
    return HamCycle(Vertex.parse(t) for t in labels)


def load_cycle(path) -> HamCycle:
    return parse_cycle(Path(path).read_text())


def dump_cycle(h: HamCycle, path, m: Pairing | None = None) -> None:
    Path(path).write_text(format_cycle(h, m))


def splice(order: Sequence[Vertex], inserts: dict) -> list[Vertex]:
    """Replace cycle edges by paths.

    ``inserts`` maps ``frozenset({x, y})`` to ``(x, inner)``: the edge ``xy``
    becomes ``x, *inner, y``.  Each key must be a cycle edge.
    """
    n = len(order)
    out: list[Vertex] = []
    used = 0
    for i, p in enumerate(order):
        q = order[(i + 1) % n]
        out.append(p)
        key = frozenset((p, q))
        if key in inserts:
            x, inner = inserts[key]
            out.extend(inner if p == x else reversed(inner))
            used += 1
    if used != len(inserts):
        raise ValueError("some spliced edges are not edges of the cycle")
    return out
