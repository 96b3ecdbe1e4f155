"""Pairings (perfect matchings of the complete graph on a vertex set)."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .errors import InvalidParameter, NoPairingExists
from .graph_core import Graph, Vertex, as_map, build_rook

__all__ = [
    "Pairing",
    "ColumnClass",
    "NuProfile",
    "enumerate_pairings",
    "count_pairings",
    "random_pairing",
    "sample_pairings",
    "is_perfect_matching_of",
    "cut_pairing",
    "classify_columns",
    "format_pairing",
    "parse_pairing",
    "load_pairing",
    "dump_pairing",
]


class Pairing:
    """A set of disjoint vertex pairs covering every vertex of ``ground``.

    Pairs need not be edges of ``ground``.  Stored in canonical form: each pair
    ordered lesser-first, pairs sorted.  Equality ignores ``ground``.
    """

    __slots__ = ("pairs", "ground", "_partner")

    def __init__(self, ground: Graph, pairs: Iterable):
        canon = []
        partner: dict[Vertex, Vertex] = {}
        for u, v in pairs:
            u, v = Vertex(*u), Vertex(*v)
            if u == v:
                raise InvalidParameter(f"pair {u}-{v} is degenerate")
            for x in (u, v):
                if not ground.has_vertex(x):
                    raise InvalidParameter(f"{x} is not a vertex of {ground.family}")
                if x in partner:
                    raise InvalidParameter(f"{x} appears in more than one pair")
            partner[u], partner[v] = v, u
            canon.append((u, v) if u < v else (v, u))
        if len(partner) != ground.order:
            missing = [v for v in ground.vertices if v not in partner]
            raise InvalidParameter(f"pairing leaves {len(missing)} vertices uncovered, e.g. {missing[0]}")
        self.pairs = tuple(sorted(canon))
        self.ground = ground
        self._partner = partner

    def partner(self, v: Vertex) -> Vertex:
        return self._partner[v]

    def contains(self, u, v) -> bool:
        return self._partner.get(u) == v

    def partner_array(self) -> np.ndarray:
        """Partner of each vertex, by the ground graph's vertex index."""
        g = self.ground
        return np.array([g.index(self._partner[v]) for v in g.vertices], dtype=np.int64)

    def relabel(self, mapping, ground: Graph) -> "Pairing":
        f = as_map(mapping)
        return Pairing(ground, ((f(u), f(v)) for u, v in self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pairing):
            return NotImplemented
        return self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash(self.pairs)

    def __repr__(self) -> str:
        body = " ".join(f"{u}-{v}" for u, v in self.pairs)
        return f"Pairing({body})"


def _require_even(ground: Graph) -> None:
    if ground.order % 2:
        raise NoPairingExists(f"{ground.family} has odd order {ground.order}")


def count_pairings(n: int) -> int:
    """(n-1)!! for even n."""
    out = 1
    for k in range(n - 1, 0, -2):
        out *= k
    return out


def enumerate_pairings(ground: Graph) -> Iterator[Pairing]:
    """Every pairing of ``ground`` exactly once.

    Order: the least unmatched vertex is paired with each greater unmatched
    vertex in turn, recursively.
    """
    _require_even(ground)
    vs = list(ground.vertices)
    n = len(vs)
    used = [False] * n
    acc: list[tuple[Vertex, Vertex]] = []

    def rec(first: int):
        while first < n and used[first]:
            first += 1
        if first == n:
            yield Pairing(ground, acc)
            return
        used[first] = True
        for j in range(first + 1, n):
            if used[j]:
                continue
            used[j] = True
            acc.append((vs[first], vs[j]))
            yield from rec(first + 1)
            acc.pop()
            used[j] = False
        used[first] = False

    yield from rec(0)


def _draw(ground: Graph, rng: np.random.Generator) -> Pairing:
    rest = list(ground.vertices)
    pairs = []
    while rest:
        u = rest.pop(0)
        v = rest.pop(int(rng.integers(len(rest))))
        pairs.append((u, v))
    return Pairing(ground, pairs)


def random_pairing(ground: Graph, seed: int) -> Pairing:
    """Uniform random pairing, reproducible for a fixed seed (numpy PCG64)."""
    _require_even(ground)
    return _draw(ground, np.random.default_rng(seed))


def sample_pairings(ground: Graph, count: int, seed: int) -> Iterator[Pairing]:
    """``count`` independent uniform pairings drawn from one PCG64 stream."""
    _require_even(ground)
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield _draw(ground, rng)


def is_perfect_matching_of(ground: Graph, m: Pairing) -> bool:
    return all(ground.has_edge(u, v) for u, v in m.pairs)


def cut_pairing(m2: int) -> Pairing:
    """The edge cut between the two rows of rook(2, m2), m2 odd."""
    if int(m2) != m2 or m2 < 3 or m2 % 2 == 0:
        raise InvalidParameter(f"cut pairing is a witness only for odd m2 >= 3, got {m2!r}")
    g = build_rook(2, m2)
    return Pairing(g, ((Vertex(0, j), Vertex(1, j)) for j in range(m2)))


class ColumnClass(enum.IntEnum):
    """The three perfect matchings of a 4-clique on rows a, b, c, d = 0..3."""

    AB_CD = 0
    AC_BD = 1
    AD_BC = 2

    @property
    def pairs(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return _CLASS_PAIRS[self]

    @classmethod
    def of(cls, pairs) -> "ColumnClass":
        key = frozenset(frozenset(p) for p in pairs)
        for c in cls:
            if key == frozenset(frozenset(p) for p in c.pairs):
                return c
        raise ValueError(f"{pairs!r} is not a perfect matching of rows 0..3")

    def __str__(self) -> str:
        return ("ab|cd", "ac|bd", "ad|bc")[self]


_CLASS_PAIRS = {
    ColumnClass.AB_CD: ((0, 1), (2, 3)),
    ColumnClass.AC_BD: ((0, 2), (1, 3)),
    ColumnClass.AD_BC: ((0, 3), (1, 2)),
}


@dataclass(frozen=True)
class NuProfile:
    """How each 4-clique column of rook(4, m) is matched internally."""

    nu_ab_cd: int
    nu_ac_bd: int
    nu_ad_bc: int
    column_classes: tuple[ColumnClass, ...]

    @property
    def counts(self) -> tuple[int, int, int]:
        return (self.nu_ab_cd, self.nu_ac_bd, self.nu_ad_bc)


def classify_columns(graph: Graph, m: Pairing) -> NuProfile | None:
    """Column profile of a pairing of rook(4, m), or ``None`` if some column
    is not perfectly matched inside itself."""
    if graph.family.name != "rook" or graph.family.params[0] != 4:
        raise InvalidParameter(f"classify_columns needs rook(4, m), got {graph.family}")
    m2 = graph.family.params[1]
    inside: list[list[tuple[int, int]]] = [[] for _ in range(m2)]
    for u, v in m.pairs:
        if u.col != v.col:
            return None
        inside[u.col].append((u.row, v.row))
    classes = tuple(ColumnClass.of(p) for p in inside)
    counts = [sum(1 for c in classes if c == k) for k in ColumnClass]
    return NuProfile(counts[0], counts[1], counts[2], classes)


# -- text format ----------------------------------------------------------


def format_pairing(m: Pairing) -> str:
    return "".join(f"{u.label} {v.label}\n" for u, v in m.pairs)


def parse_pairing(text: str, ground: Graph) -> Pairing:
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if len(tok) != 2:
            raise ValueError(f"line {lineno}: expected two vertex labels, got {raw!r}")
        pairs.append((Vertex.parse(tok[0]), Vertex.parse(tok[1])))
    return Pairing(ground, pairs)


def load_pairing(path, ground: Graph) -> Pairing:
    return parse_pairing(Path(path).read_text(), ground)


def dump_pairing(m: Pairing, path) -> None:
    Path(path).write_text(format_pairing(m))
