"""Graph families used throughout the package.

Every graph lives on ``(row, col)`` grid labels so that pairings and cycles
serialize the same way regardless of where the graph came from.  The
canonical embeddings are:

* ``complete(n)``, ``path(q)``, ``empty(n)``: ``(0, j)`` for ``j < n``.
* ``complete_bipartite(a, b)``: row 0 holds the ``a``-side, row 1 the ``b``-side.
* ``rook(m1, m2)`` and ``bor(m1, m2)``: the board cell itself.
* ``hypercube(n)``: vertex ``x`` goes to ``(x >> k, x & (2**k - 1))`` with
  ``k = ceil(n / 2)``.
* products ``g x h``: ``(index of g-coordinate, index of h-coordinate)``,
  indices taken in each factor's sorted vertex order.
* ``line_graph(g)``: ``(0, k)`` where ``k`` indexes ``g``'s sorted edge list.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, NamedTuple, Union

import numpy as np

from .errors import InvalidParameter

__all__ = [
    "Vertex",
    "Family",
    "Graph",
    "build_complete",
    "build_path",
    "build_empty",
    "build_complete_bipartite",
    "build_rook",
    "build_bishop_on_rook",
    "build_hypercube",
    "build_petersen",
    "cartesian_product",
    "conormal_product",
    "line_graph",
    "format_graph",
    "parse_graph",
    "load_graph",
    "dump_graph",
]

MAX_HYPERCUBE_DIM = 20


class Vertex(NamedTuple):
    """A board cell; tuple ordering gives the lexicographic total order."""

    row: int
    col: int

    @property
    def label(self) -> str:
        return f"{self.row}.{self.col}"

    @classmethod
    def parse(cls, text: str) -> "Vertex":
        m = re.fullmatch(r"(\d+)\.(\d+)", text.strip())
        if m is None:
            raise ValueError(f"bad vertex label {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    def __str__(self) -> str:
        return self.label


Param = Union[int, str, "Family"]


@dataclass(frozen=True)
class Family:
    """Family tag with parameters, e.g. ``Family("rook", (4, 3))``."""

    name: str
    params: tuple = ()

    def __str__(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}({','.join(str(p) for p in self.params)})"

    @classmethod
    def parse(cls, text: str) -> "Family":
        fam, rest = _parse_family(text.strip(), 0)
        if rest != len(text.strip()):
            raise ValueError(f"trailing text in family {text!r}")
        return fam


def _parse_param(text: str, pos: int) -> tuple[Param, int]:
    m = re.compile(r"[A-Za-z0-9_\-]+").match(text, pos)
    if m is None:
        raise ValueError(f"bad family parameter at {pos} in {text!r}")
    if m.end() < len(text) and text[m.end()] == "(":
        return _parse_family(text, pos)
    tok = m.group(0)
    return (int(tok) if tok.isdigit() else tok), m.end()


def _parse_family(text: str, pos: int) -> tuple[Family, int]:
    m = re.compile(r"[A-Za-z_][A-Za-z0-9_\-]*").match(text, pos)
    if m is None:
        raise ValueError(f"bad family name at {pos} in {text!r}")
    name, pos = m.group(0), m.end()
    if pos >= len(text) or text[pos] != "(":
        return Family(name), pos
    pos += 1
    params: list[Param] = []
    while True:
        p, pos = _parse_param(text, pos)
        params.append(p)
        if pos >= len(text):
            raise ValueError(f"unterminated family {text!r}")
        if text[pos] == ")":
            return Family(name, tuple(params)), pos + 1
        if text[pos] != ",":
            raise ValueError(f"expected ',' at {pos} in {text!r}")
        pos += 1


Edge = tuple[Vertex, Vertex]


def as_map(mapping):
    """Accept a dict or a callable vertex map."""
    return mapping if callable(mapping) else mapping.__getitem__


def _norm_edge(u: Vertex, v: Vertex) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph on :class:`Vertex` labels."""

    __slots__ = ("_vertices", "_edges", "_adj", "_index", "_family", "_matrix")

    def __init__(self, vertices: Iterable, edges: Iterable, family: Family | None = None):
        verts = tuple(sorted({Vertex(*v) for v in vertices}))
        vset = set(verts)
        es = set()
        adj: dict[Vertex, set] = {v: set() for v in verts}
        for u, v in edges:
            u, v = Vertex(*u), Vertex(*v)
            if u == v:
                raise InvalidParameter(f"loop at {u}")
            if u not in vset or v not in vset:
                raise InvalidParameter(f"edge {u}-{v} has an endpoint outside the vertex set")
            es.add(_norm_edge(u, v))
            adj[u].add(v)
            adj[v].add(u)
        self._vertices = verts
        self._edges = frozenset(es)
        self._adj = {v: frozenset(n) for v, n in adj.items()}
        self._index = {v: i for i, v in enumerate(verts)}
        self._family = family if family is not None else Family("custom")
        self._matrix = None

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return self._vertices

    @property
    def edges(self) -> frozenset:
        return self._edges

    @property
    def family(self) -> Family:
        return self._family

    @property
    def order(self) -> int:
        return len(self._vertices)

    @property
    def size(self) -> int:
        return len(self._edges)

    def has_vertex(self, v) -> bool:
        return v in self._index

    def has_edge(self, u, v) -> bool:
        return v in self._adj.get(u, ())

    def neighbors(self, v) -> frozenset:
        return self._adj[v]

    def degree(self, v) -> int:
        return len(self._adj[v])

    def index(self, v) -> int:
        return self._index[v]

    def sorted_edges(self) -> list[Edge]:
        return sorted(self._edges)

    def adjacency_matrix(self) -> np.ndarray:
        """Dense ``uint8`` adjacency in vertex-index order (cached, read-only)."""
        if self._matrix is None:
            n = self.order
            a = np.zeros((n, n), dtype=np.uint8)
            for u, v in self._edges:
                i, j = self._index[u], self._index[v]
                a[i, j] = a[j, i] = 1
            a.setflags(write=False)
            self._matrix = a
        return self._matrix

    def with_family(self, family: Family) -> "Graph":
        return Graph(self._vertices, self._edges, family)

    def relabel(self, mapping, family: Family | None = None) -> "Graph":
        f = as_map(mapping)
        return Graph(
            (f(v) for v in self._vertices),
            ((f(u), f(v)) for u, v in self._edges),
            family if family is not None else self._family,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._family == other._family
            and self._vertices == other._vertices
            and self._edges == other._edges
        )

    def __hash__(self) -> int:
        return hash((self._family, self._vertices, self._edges))

    def __repr__(self) -> str:
        return f"Graph({self._family}, order={self.order}, size={self.size})"

    def __getstate__(self):
        return (self._vertices, self._edges, self._family)

    def __setstate__(self, state):
        vertices, edges, family = state
        self.__init__(vertices, edges, family)


def _positive(name: str, value: int) -> int:
    if int(value) != value or value < 1:
        raise InvalidParameter(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def build_complete(n: int) -> Graph:
    n = _positive("n", n)
    vs = [Vertex(0, j) for j in range(n)]
    return Graph(vs, itertools.combinations(vs, 2), Family("complete", (n,)))


def build_path(q: int) -> Graph:
    q = _positive("q", q)
    vs = [Vertex(0, j) for j in range(q)]
    return Graph(vs, zip(vs, vs[1:]), Family("path", (q,)))


def build_empty(n: int) -> Graph:
    n = _positive("n", n)
    return Graph([Vertex(0, j) for j in range(n)], [], Family("empty", (n,)))


def build_complete_bipartite(a: int, b: int) -> Graph:
    a, b = _positive("a", a), _positive("b", b)
    us = [Vertex(0, i) for i in range(a)]
    ws = [Vertex(1, j) for j in range(b)]
    return Graph(us + ws, itertools.product(us, ws), Family("complete_bipartite", (a, b)))


def build_rook(m1: int, m2: int) -> Graph:
    """Rook graph: cells sharing a row or a column are adjacent."""
    m1, m2 = _positive("m1", m1), _positive("m2", m2)
    vs = [Vertex(r, c) for r in range(m1) for c in range(m2)]
    edges = [
        (u, v)
        for u, v in itertools.combinations(vs, 2)
        if u.row == v.row or u.col == v.col
    ]
    return Graph(vs, edges, Family("rook", (m1, m2)))


def build_bishop_on_rook(m1: int, m2: int) -> Graph:
    """Vertical plus diagonal moves only: cells in different rows are adjacent."""
    m1, m2 = _positive("m1", m1), _positive("m2", m2)
    vs = [Vertex(r, c) for r in range(m1) for c in range(m2)]
    edges = [(u, v) for u, v in itertools.combinations(vs, 2) if u.row != v.row]
    return Graph(vs, edges, Family("bor", (m1, m2)))


def _cube_label(x: int, n: int) -> Vertex:
    k = (n + 1) // 2
    return Vertex(x >> k, x & ((1 << k) - 1))


def build_hypercube(n: int) -> Graph:
    if int(n) != n or not 1 <= n <= MAX_HYPERCUBE_DIM:
        raise InvalidParameter(f"hypercube dimension must be in 1..{MAX_HYPERCUBE_DIM}, got {n!r}")
    n = int(n)
    vs = [_cube_label(x, n) for x in range(1 << n)]
    edges = [
        (_cube_label(x, n), _cube_label(x ^ (1 << b), n))
        for x in range(1 << n)
        for b in range(n)
        if x < x ^ (1 << b)
    ]
    return Graph(vs, edges, Family("hypercube", (n,)))


def build_petersen() -> Graph:
    """Petersen graph: outer 5-cycle on row 0, inner pentagram on row 1."""
    outer = [Vertex(0, i) for i in range(5)]
    inner = [Vertex(1, i) for i in range(5)]
    edges = []
    for i in range(5):
        edges.append((outer[i], outer[(i + 1) % 5]))
        edges.append((inner[i], inner[(i + 2) % 5]))
        edges.append((outer[i], inner[i]))
    return Graph(outer + inner, edges, Family("petersen"))


def _check_nonempty(*graphs: Graph) -> None:
    for g in graphs:
        if g.order == 0:
            raise InvalidParameter("product factor must be nonempty")


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Adjacent iff equal in one coordinate and adjacent in the other."""
    _check_nonempty(g, h)
    gv, hv = g.vertices, h.vertices
    vs = [Vertex(i, j) for i in range(len(gv)) for j in range(len(hv))]
    edges = []
    for u, v in g.edges:
        i, k = g.index(u), g.index(v)
        edges.extend((Vertex(i, j), Vertex(k, j)) for j in range(len(hv)))
    for u, v in h.edges:
        j, l = h.index(u), h.index(v)
        edges.extend((Vertex(i, j), Vertex(i, l)) for i in range(len(gv)))
    return Graph(vs, edges, Family("product", ("cartesian", g.family, h.family)))


def conormal_product(g: Graph, h: Graph) -> Graph:
    """Adjacent iff the first coordinates are adjacent or the second ones are."""
    _check_nonempty(g, h)
    vs = [Vertex(i, j) for i in range(g.order) for j in range(h.order)]
    ga, ha = g.adjacency_matrix(), h.adjacency_matrix()
    edges = [
        (u, v)
        for u, v in itertools.combinations(vs, 2)
        if ga[u.row, v.row] or ha[u.col, v.col]
    ]
    return Graph(vs, edges, Family("product", ("conormal", g.family, h.family)))


def line_graph(g: Graph) -> Graph:
    if g.size == 0:
        raise InvalidParameter("line graph of an edgeless graph is empty")
    es = g.sorted_edges()
    vs = [Vertex(0, k) for k in range(len(es))]
    edges = [
        (vs[i], vs[j])
        for i, j in itertools.combinations(range(len(es)), 2)
        if set(es[i]) & set(es[j])
    ]
    return Graph(vs, edges, Family("line_graph", (g.family,)))


# -- text format ----------------------------------------------------------


def format_graph(g: Graph) -> str:
    fam = g.family
    lines = [" ".join(["graph", fam.name, *(str(p) for p in fam.params)])]
    lines += [f"v {v.label}" for v in g.vertices]
    lines += [f"e {u.label} {v.label}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    family = None
    vs, es = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "graph":
            if family is not None or len(tok) < 2:
                raise ValueError(f"line {lineno}: bad or repeated header")
            params = tuple(_parse_param(t, 0)[0] for t in tok[2:])
            family = Family(tok[1], params)
        elif tok[0] == "v" and len(tok) == 2:
            vs.append(Vertex.parse(tok[1]))
        elif tok[0] == "e" and len(tok) == 3:
            es.append((Vertex.parse(tok[1]), Vertex.parse(tok[2])))
        else:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
    if family is None:
        raise ValueError("missing 'graph' header")
    return Graph(vs, es, family)


def load_graph(path) -> Graph:
    return parse_graph(Path(path).read_text())


def dump_graph(g: Graph, path) -> None:
    Path(path).write_text(format_graph(g))
