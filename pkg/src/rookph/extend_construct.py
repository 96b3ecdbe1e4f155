"""Constructive extenders for rook graphs and complete bipartite graphs.

Rows 0..3 of rook(4, m) play the letters a, b, c, d and column ``i - 1``
plays subscript ``i``; for K_{n,n}, row 0 holds u_1..u_n and row 1 holds
w_1..w_n.  Wherever the construction normalizes "without loss of
generality", the code relabels by a graph automorphism, builds the cycle on
canonical labels and maps it back.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cycle import HamCycle, splice, verify_extension
from .errors import BudgetExceeded, InternalInvariantViolation, InvalidParameter, NoPairingExists
from .extend_search import DEFAULT_BUDGET, Certificate, decide_nonextendable, extend_by_search
from .graph_core import Graph, Vertex, build_complete_bipartite, build_rook
from .matchings import ColumnClass, NuProfile, Pairing, classify_columns, cut_pairing

__all__ = [
    "HamCycle",
    "Nonextendable",
    "Case1Plan",
    "Case2Plan",
    "BridgePath",
    "extend_rook",
    "extend_4xm_odd",
    "plan_case1",
    "case1_extend",
    "plan_case2",
    "case2_extend",
    "extend_knn",
    "construct_extension",
]

A, B, C, D = 0, 1, 2, 3


@dataclass(frozen=True)
class Nonextendable:
    """Witness that a pairing admits no qualifying cycle."""

    pairing: Pairing
    reason: str
    certificate: Certificate | None = None


def _cells(text: str) -> list[Vertex]:
    """``"a1 b1 d3"`` -> board cells, letters as rows, 1-based columns."""
    return [Vertex("abcd".index(t[0]), int(t[1:]) - 1) for t in text.split()]


# Canonical cycles for the small column profiles of the 4 x m case.
CYCLE_111 = _cells("a1 b1 c1 d1 d3 a3 c3 b3 b2 d2 c2 a2")
CYCLE_210 = _cells("a1 b1 b2 a2 a3 c3 b3 d3 d2 c2 c1 d1")
CYCLE_221 = _cells("a1 b1 b2 a2 a3 c3 b3 d3 d4 b4 b5 c5 c4 a4 a5 d5 d2 c2 c1 d1")


def _checked(host: Graph, m: Pairing, h: HamCycle) -> HamCycle:
    if not verify_extension(host, m, h):
        raise InternalInvariantViolation(f"construction produced an invalid cycle on {host.family}")
    return h


def _rehome(m: Pairing, ground: Graph) -> Pairing:
    if set(m.ground.vertices) != set(ground.vertices):
        raise InvalidParameter(f"pairing does not cover the vertices of {ground.family}")
    return Pairing(ground, m.pairs)


def _transpose(v: Vertex) -> Vertex:
    return Vertex(v.col, v.row)


# -- rook graphs ----------------------------------------------------------


def extend_rook(m1: int, m2: int, m: Pairing, *, budget: int = DEFAULT_BUDGET) -> HamCycle | Nonextendable:
    """Extend a pairing of rook(m1, m2), or return why it cannot be extended.

    Branches: one column is a complete graph; 2 x odd is decided by search
    (the cut pairing is refused outright); 4 x odd uses the two-case
    construction; every other even board is PH and handed to search.
    """
    if m1 < 1 or m2 < 1:
        raise InvalidParameter(f"rook({m1},{m2}) is empty")
    if m1 % 2 and m2 % 2:
        raise NoPairingExists(f"rook({m1},{m2}) has odd order")
    host = build_rook(m1, m2)
    m = _rehome(m, host)
    if m1 % 2:
        t = build_rook(m2, m1)
        res = extend_rook(m2, m1, m.relabel(_transpose, t), budget=budget)
        if isinstance(res, Nonextendable):
            return Nonextendable(m, res.reason, res.certificate)
        return _checked(host, m, res.relabel(_transpose))

    if m2 == 1:
        if m1 == 2:
            return Nonextendable(m, "two vertices carry no cycle")
        return _checked(host, m, HamCycle(v for pair in m.pairs for v in pair))
    if m1 == 2 and m2 % 2:
        if m == cut_pairing(m2):
            return Nonextendable(m, "cut pairing between the two rows")
        cert = decide_nonextendable(host, m, budget=budget)
        if cert.outcome == "inconclusive":
            raise BudgetExceeded(cert.nodes_visited, budget)
        if cert.outcome == "nonextendable":
            return Nonextendable(m, "exhaustive search", cert)
        return _checked(host, m, cert.cycle)
    if m1 == 4 and m2 % 2:
        return extend_4xm_odd(m2, m, budget=budget)
    h = extend_by_search(host, m, budget=budget)
    if h is None:
        raise InternalInvariantViolation(f"no extension found on {host.family}, which is PH")
    return _checked(host, m, h)


def extend_4xm_odd(m2: int, m: Pairing, *, budget: int = DEFAULT_BUDGET) -> HamCycle:
    if m2 < 3 or m2 % 2 == 0:
        raise InvalidParameter(f"extend_4xm_odd needs odd m2 >= 3, got {m2}")
    host = build_rook(4, m2)
    m = _rehome(m, host)
    nu = classify_columns(host, m)
    if nu is None:
        h = case1_extend(m2, m, plan_case1(m2, m), budget=budget)
    else:
        h = case2_extend(m2, m, plan_case2(m2, m, nu), budget=budget)
    return _checked(host, m, h)


@dataclass(frozen=True)
class Case1Plan:
    split_col: int
    m1_matching: tuple  # perfect matching of the split column, M-pairs included
    bridge_pairs: tuple  # ((p, q), (x, y)): added pair pq, x ~ p and y ~ q in M


def plan_case1(m2: int, m: Pairing) -> Case1Plan:
    for s in range(m2):
        inside = [p for p in m.pairs if p[0].col == s and p[1].col == s]
        if len(inside) < 2:
            break
    else:
        raise InvalidParameter("every column is matched internally; this is case 2")
    matched = {x for p in inside for x in p}
    free = [Vertex(r, s) for r in range(4) if Vertex(r, s) not in matched]
    if len(free) not in (2, 4):
        raise InternalInvariantViolation(f"column {s} has {len(free)} unmatched vertices")
    # least completion: pair free vertices in row order
    added = [(free[i], free[i + 1]) for i in range(0, len(free), 2)]
    bridges = tuple(((p, q), (m.partner(p), m.partner(q))) for p, q in added)
    return Case1Plan(s, tuple(sorted(inside + added)), bridges)


def case1_extend(m2: int, m: Pairing, plan: Case1Plan, *, budget: int = DEFAULT_BUDGET) -> HamCycle:
    """Split off one column, extend the remaining 4 x (m2 - 1) board, splice back."""
    s = plan.split_col
    inside = [p for p in m.pairs if p[0].col == s and p[1].col == s]
    for (p, q), (x, y) in plan.bridge_pairs:
        if m.partner(p) != x or m.partner(q) != y or x.col == s or y.col == s:
            raise InternalInvariantViolation("case 1 plan does not match the pairing")
    if len(inside) + len(plan.bridge_pairs) != 2:
        raise InternalInvariantViolation("case 1 plan does not cover the split column")

    cols = [c for c in range(m2) if c != s]
    shrink = {Vertex(r, c): Vertex(r, i) for i, c in enumerate(cols) for r in range(4)}
    grow = {v: k for k, v in shrink.items()}
    rest = [p for p in m.pairs if p[0].col != s and p[1].col != s]
    rest += [xy for _, xy in plan.bridge_pairs]
    g2 = build_rook(4, m2 - 1)
    sub = extend_rook(4, m2 - 1, Pairing(g2, ((shrink[u], shrink[v]) for u, v in rest)), budget=budget)
    if not isinstance(sub, HamCycle):
        raise InternalInvariantViolation(f"rook(4,{m2 - 1}) pairing was not extended")
    h2 = sub.relabel(grow)

    if len(plan.bridge_pairs) == 1:
        # x, a, d, c, b, y with cd the pair M already has inside the column
        ((p, q), (x, y)), = plan.bridge_pairs
        (t1, t2), = inside
        inserts = {frozenset((x, y)): (x, [p, t2, t1, q])}
    else:
        inserts = {frozenset((x, y)): (x, [p, q]) for (p, q), (x, y) in plan.bridge_pairs}
    return HamCycle(splice(h2.order, inserts))


@dataclass(frozen=True)
class BridgePath:
    """A piece of the rows-b/c cycle, joined to rows a/d through its ends."""

    vertices: tuple
    u: Vertex
    v: Vertex
    x: Vertex
    y: Vertex


@dataclass(frozen=True)
class Case2Plan:
    nu: NuProfile  # profile after normalization
    row_perm: tuple  # row_perm[old_row] = canonical row
    col_perm: tuple  # col_perm[canonical_col] = old column
    r: int
    r_prime: int
    h1: tuple = ()  # cycle on rows b, c (only when nu_ab_cd >= 3)
    paths: tuple = ()
    m2_pairs: tuple = ()  # pairing of rows a, d to be extended by search

    def forward(self) -> dict:
        pos = {c: i for i, c in enumerate(self.col_perm)}
        return {
            Vertex(r, c): Vertex(self.row_perm[r], pos[c])
            for r in range(4)
            for c in range(len(self.col_perm))
        }


def _row_perm_for(ranking: list) -> tuple:
    for perm in itertools.permutations(range(4)):
        if all(
            ColumnClass.of([(perm[a], perm[b]) for a, b in cls.pairs]) == ColumnClass(i)
            for i, cls in enumerate(ranking)
        ):
            return perm
    raise InternalInvariantViolation("no row permutation realizes the class ranking")


def plan_case2(m2: int, m: Pairing, nu: NuProfile | None = None) -> Case2Plan:
    host = build_rook(4, m2)
    if nu is None:
        nu = classify_columns(host, m)
    if nu is None:
        raise InvalidParameter("some column is not matched internally; this is case 1")
    counts = nu.counts
    ranking = sorted(ColumnClass, key=lambda c: (-counts[c], c))
    row_perm = _row_perm_for(ranking)
    new_class = [ColumnClass(ranking.index(c)) for c in nu.column_classes]
    col_perm = tuple(sorted(range(m2), key=lambda c: (new_class[c], c)))
    canon_classes = tuple(new_class[c] for c in col_perm)
    canon_counts = [canon_classes.count(k) for k in ColumnClass]
    canon_nu = NuProfile(*canon_counts, canon_classes)
    r = canon_counts[0] + canon_counts[1]
    r_prime = r - r % 2
    plan = Case2Plan(canon_nu, row_perm, col_perm, r, r_prime)
    if canon_counts[0] < 3:
        return plan

    mc = m.relabel(plan.forward(), host)
    h1, paths = _bc_paths(m2, mc, r, r_prime)
    m2_pairs = [(bp.x, bp.y) for bp in paths]
    m2_pairs += [p for p in mc.pairs if p[0].row in (A, D) and p[1].row in (A, D)]
    return Case2Plan(canon_nu, row_perm, col_perm, r, r_prime, tuple(h1), tuple(paths), tuple(m2_pairs))


def _bc_paths(m2: int, mc: Pairing, r: int, rp: int):
    """The rows-b/c cycle and the paths left after dropping its non-M pairs."""

    def b(i):
        return Vertex(B, i - 1)

    def c(i):
        return Vertex(C, i - 1)

    m1 = [(b(i), b(i + 1)) for i in range(1, rp, 2)]
    m1 += [(c(i), c(i + 1)) for i in range(1, rp, 2)]
    m1 += [(b(i), c(i)) for i in range(rp + 1, m2 + 1)]

    h1 = [b(i) for i in range(1, rp + 1)]
    for t, i in enumerate(range(rp + 1, m2 + 1)):
        h1 += [b(i), c(i)] if t % 2 == 0 else [c(i), b(i)]
    h1 += [c(i) for i in range(rp, 0, -1)]

    m1_set = {frozenset(p) for p in m1}
    n = len(h1)
    for i in range(n):
        u, v = h1[i], h1[(i + 1) % n]
        if frozenset((u, v)) not in m1_set and u.row != v.row and u.col != v.col:
            raise InternalInvariantViolation(f"rows-b/c cycle uses a non-edge {u}-{v}")
    deleted = {e for e in m1_set if not mc.contains(*tuple(e))}
    if len(deleted) != r:
        raise InternalInvariantViolation(f"expected {r} deleted pairs, got {len(deleted)}")

    first = next(i for i in range(n) if frozenset((h1[i], h1[(i + 1) % n])) in deleted)
    walk = h1[first + 1:] + h1[:first + 1]
    paths, cur = [], [walk[0]]
    for i in range(1, n + 1):
        prev = walk[i - 1]
        nxt = walk[i % n]
        if frozenset((prev, nxt)) in deleted:
            paths.append(cur)
            cur = [nxt]
        else:
            cur.append(nxt)
    out = []
    for p in paths:
        u, v = p[0], p[-1]
        out.append(BridgePath(tuple(p), u, v, mc.partner(u), mc.partner(v)))

    ends = {z for bp in out for z in (bp.u, bp.v)}
    if ends != {z for i in range(1, r + 1) for z in (b(i), c(i))}:
        raise InternalInvariantViolation("path ends are not the b/c vertices of the first r columns")
    partners = {z for bp in out for z in (bp.x, bp.y)}
    if partners != {Vertex(row, i) for i in range(r) for row in (A, D)}:
        raise InternalInvariantViolation("path partners are not the a/d vertices of the first r columns")
    return h1, out


def case2_extend(m2: int, m: Pairing, plan: Case2Plan, *, budget: int = DEFAULT_BUDGET) -> HamCycle:
    """Every column matched internally: canonical cycle, mapped back."""
    host = build_rook(4, m2)
    fwd = plan.forward()
    back = {v: k for k, v in fwd.items()}
    mc = m.relabel(fwd, host)
    nab, nac, nad = plan.nu.counts
    if nab == 1:
        order = CYCLE_111
    elif nab == 2:
        order = CYCLE_210 if nad == 0 else CYCLE_221
    else:
        order = _case2_general(m2, mc, plan, budget)
    return _checked(host, m, HamCycle(order).relabel(back))


def _case2_general(m2: int, mc: Pairing, plan: Case2Plan, budget: int) -> list[Vertex]:
    # rows a, d form a copy of rook(2, m2)
    down = {Vertex(row, i): Vertex(k, i) for k, row in enumerate((A, D)) for i in range(m2)}
    up = {v: k for k, v in down.items()}
    g2 = build_rook(2, m2)
    m2p = Pairing(g2, ((down[x], down[y]) for x, y in plan.m2_pairs))
    h2 = extend_by_search(g2, m2p, budget=budget)
    if h2 is None:
        raise InternalInvariantViolation("rows a/d pairing does not extend")
    inserts = {frozenset((bp.x, bp.y)): (bp.x, list(bp.vertices)) for bp in plan.paths}
    return splice(h2.relabel(up).order, inserts)


# -- complete bipartite graphs ---------------------------------------------


def _u(i: int) -> Vertex:
    return Vertex(0, i)


def _w(i: int) -> Vertex:
    return Vertex(1, i)


def _knn_base(idx: list[int], partner: dict) -> list[Vertex]:
    i, j = idx
    first, *rest = (_u(i), _u(j), _w(i), _w(j))
    for tail in itertools.permutations(rest):
        order = [first, *tail]
        edges = {frozenset((order[k], order[(k + 1) % 4])) for k in range(4)}
        pairs = {frozenset((v, partner[v])) for v in order}
        if pairs <= edges and all(len({z.row for z in e}) == 2 for e in edges - pairs):
            return order
    raise InternalInvariantViolation("K_{2,2} pairing did not extend")


def _knn_rec(idx: list[int], partner: dict) -> tuple[list[Vertex], int]:
    if all(partner[_u(i)] == _w(i) for i in idx):
        return [v for i in idx for v in (_u(i), _w(i))], 0
    if len(idx) == 2:
        return _knn_base(idx, partner), 0
    j = max(i for i in idx if partner[_u(i)] != _w(i))
    x, y = partner[_u(j)], partner[_w(j)]
    sub = {k: v for k, v in partner.items() if k not in (_u(j), _w(j))}
    sub[x], sub[y] = y, x
    order, depth = _knn_rec([i for i in idx if i != j], sub)
    return splice(order, {frozenset((x, y)): (x, [_u(j), _w(j)])}), depth + 1


def _extend_knn(n: int, m: Pairing) -> tuple[HamCycle, int]:
    if n < 2:
        raise InvalidParameter(f"K_{{n,n}} extension needs n >= 2, got {n}")
    host = build_complete_bipartite(n, n)
    m = _rehome(m, host)
    partner = {v: m.partner(v) for v in host.vertices}
    order, depth = _knn_rec(list(range(n)), partner)
    return _checked(host, m, HamCycle(order)), depth


def extend_knn(n: int, m: Pairing) -> HamCycle:
    """Extend a pairing of K_{n,n} by peeling off one u_j w_j column at a time."""
    return _extend_knn(n, m)[0]


# -- dispatch ---------------------------------------------------------------


def construct_extension(host: Graph, m: Pairing, *, budget: int = DEFAULT_BUDGET) -> HamCycle | Nonextendable:
    """Constructive extender for ``host``'s family.

    Families without a construction (hypercubes, Petersen, products, wider
    bishop-on-a-rook boards) fall back to search.
    """
    fam = host.family
    p = fam.params
    if fam.name == "rook":
        return extend_rook(p[0], p[1], m, budget=budget)
    if fam.name == "complete":
        res = extend_rook(1, p[0], _rehome(m, build_rook(1, p[0])), budget=budget)
        return _rehome_result(res, host, m)
    if fam.name == "complete_bipartite" and p[0] == p[1] and p[0] >= 2:
        return extend_knn(p[0], m)
    if fam.name == "bor" and p[0] == 2 and p[1] >= 2:
        return extend_knn(p[1], m)
    if fam.name == "bor" and p[1] == 1:
        res = extend_rook(p[0], 1, _rehome(m, build_rook(p[0], 1)), budget=budget)
        return _rehome_result(res, host, m)
    cert = decide_nonextendable(host, m, budget=budget)
    if cert.outcome == "inconclusive":
        raise BudgetExceeded(cert.nodes_visited, budget)
    if cert.outcome == "nonextendable":
        return Nonextendable(m, "exhaustive search", cert)
    return cert.cycle


def _rehome_result(res, host: Graph, m: Pairing):
    if isinstance(res, Nonextendable):
        return Nonextendable(m, res.reason, res.certificate)
    return _checked(host, m, res)
