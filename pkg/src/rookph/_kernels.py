"""Backtracking kernel for Hamiltonian cycles through a forced pairing.

The search works on the contracted instance: each forced pair is a
super-node that is entered through one endpoint and left through the other,
so a candidate cycle is an ordering of pairs plus an orientation for each.
Consecutive pairs must be joined by a host edge.

``forced_cycle_search`` is written in the subset of Python that numba
compiles.  Set ``ROOKPH_NUMBA=0`` to run the uncompiled numpy version.
"""

from __future__ import annotations

import os

import numpy as np

FOUND = 1
EXHAUSTED = 0
OVER_BUDGET = -1


def _numba_requested() -> bool:
    return os.environ.get("ROOKPH_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")


def forced_cycle_search(adj, partner, prune_degree, prune_connect, prune_closure, budget):
    """Search for a Hamiltonian cycle of ``adj + partner`` using every partner edge.

    ``adj`` is an ``n x n`` uint8 host adjacency matrix and ``partner`` an
    involution without fixed points.  Returns ``(status, order, stats)`` where
    ``order`` lists the cycle (valid only if ``status == FOUND``) and
    ``stats = [nodes, prunes]``.  Nodes count placed pairs; once the count
    exceeds ``budget`` the search stops with ``OVER_BUDGET``.
    """
    n = adj.shape[0]
    order = np.full(n, -1, np.int64)
    stats = np.zeros(2, np.int64)
    if n < 4:
        return EXHAUSTED, order, stats
    k = n // 2
    visited = np.zeros(n, np.bool_)
    cand = np.zeros((k, n), np.int64)
    ncand = np.zeros(k, np.int64)
    ptr = np.zeros(k, np.int64)
    score = np.zeros(n, np.int64)
    queue = np.zeros(n, np.int64)
    seen = np.zeros(n, np.bool_)

    start = 0
    order[0] = start
    order[1] = partner[start]
    visited[start] = True
    visited[partner[start]] = True
    depth = 1
    fresh = True

    while True:
        if fresh:
            end = order[2 * depth - 1]
            if depth == k:
                if adj[end, start]:
                    return FOUND, order, stats
            else:
                # candidates: entry vertices reachable from the current end,
                # fewest onward moves first
                c = 0
                for w in range(n):
                    if visited[w] or adj[end, w] == 0:
                        continue
                    x = partner[w]
                    if depth == k - 1 and adj[x, start] == 0:
                        continue
                    s = 0
                    for y in range(n):
                        if not visited[y] and y != w and y != x and adj[x, y]:
                            s += 1
                    pos = c
                    while pos > 0 and score[cand[depth, pos - 1]] > s:
                        cand[depth, pos] = cand[depth, pos - 1]
                        pos -= 1
                    score[w] = s
                    cand[depth, pos] = w
                    c += 1
                ncand[depth] = c
                ptr[depth] = 0

        if depth < k and ptr[depth] < ncand[depth]:
            w = cand[depth, ptr[depth]]
            ptr[depth] += 1
            x = partner[w]
            order[2 * depth] = w
            order[2 * depth + 1] = x
            visited[w] = True
            visited[x] = True
            depth += 1
            stats[0] += 1
            if stats[0] > budget:
                return OVER_BUDGET, order, stats

            dead = False
            if depth < k:
                end = x
                if prune_closure:
                    # the start vertex must keep an unvisited neighbour to close on
                    ok = False
                    for y in range(n):
                        if not visited[y] and adj[start, y]:
                            ok = True
                            break
                    dead = not ok
                if not dead and prune_degree:
                    # each unvisited endpoint needs a usable host edge; at most
                    # one of them may depend on the current end alone, and at
                    # most one on the start alone
                    only_end = 0
                    only_start = 0
                    for v in range(n):
                        if visited[v]:
                            continue
                        cnt = 0
                        for y in range(n):
                            if not visited[y] and y != v and y != partner[v] and adj[v, y]:
                                cnt += 1
                                break
                        if cnt == 0:
                            a_end = adj[v, end] != 0
                            a_start = adj[v, start] != 0
                            if not a_end and not a_start:
                                dead = True
                                break
                            if a_end and not a_start:
                                only_end += 1
                            elif a_start and not a_end:
                                only_start += 1
                    if only_end > 1 or only_start > 1:
                        dead = True
                if not dead and prune_connect:
                    # unvisited pairs must all hang off the current end
                    for v in range(n):
                        seen[v] = False
                    head = 0
                    tail = 0
                    for y in range(n):
                        if not visited[y] and adj[end, y]:
                            seen[y] = True
                            queue[tail] = y
                            tail += 1
                    while head < tail:
                        v = queue[head]
                        head += 1
                        p = partner[v]
                        if not seen[p]:
                            seen[p] = True
                            queue[tail] = p
                            tail += 1
                        for y in range(n):
                            if not visited[y] and not seen[y] and adj[v, y]:
                                seen[y] = True
                                queue[tail] = y
                                tail += 1
                    for v in range(n):
                        if not visited[v] and not seen[v]:
                            dead = True
                            break
            if dead:
                stats[1] += 1
                depth -= 1
                visited[order[2 * depth]] = False
                visited[order[2 * depth + 1]] = False
                fresh = False
            else:
                fresh = True
        else:
            if depth == 1:
                return EXHAUSTED, order, stats
            depth -= 1
            visited[order[2 * depth]] = False
            visited[order[2 * depth + 1]] = False
            fresh = False


forced_cycle_search_py = forced_cycle_search
_jitted = None


def jitted_search():
    """The numba-compiled kernel (compiled on first use, cached on disk)."""
    global _jitted
    if _jitted is None:
        from numba import njit

        _jitted = njit(cache=True)(forced_cycle_search_py)
    return _jitted


def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def get_search_kernel(use_numba: bool | None = None):
    """Kernel selected by ``use_numba`` or, if None, by ``ROOKPH_NUMBA``."""
    if use_numba is None:
        use_numba = _numba_requested()
    if use_numba and numba_available():
        return jitted_search()
    return forced_cycle_search_py
