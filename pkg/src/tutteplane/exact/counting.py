"""Counting oracles: perfect matchings and spanning trees."""

from __future__ import annotations

import sys
from collections import Counter, deque
from functools import lru_cache

from tutteplane.multigraph import Multigraph, is_connected


def _bandwidth_order(g: Multigraph) -> list[int]:
    """Cuthill-McKee style vertex order (keeps the matching DP's frontier small)."""
    adj: dict[int, set[int]] = {v: set() for v in range(1, g.n + 1)}
    for u, v in g.edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    order: list[int] = []
    placed: set[int] = set()
    for start in sorted(adj, key=lambda v: (len(adj[v]), v)):
        if start in placed:
            continue
        placed.add(start)
        queue = deque([start])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in sorted(adj[v] - placed, key=lambda w: (len(adj[w]), w)):
                placed.add(w)
                queue.append(w)
    return order


def count_perfect_matchings(g: Multigraph) -> int:
    """Number of perfect matchings; parallel edges count separately, loops never match."""
    if g.n % 2:
        return 0
    if g.n == 0:
        return 1
    order = _bandwidth_order(g)
    index = {v: i for i, v in enumerate(order)}
    mult: list[Counter] = [Counter() for _ in range(g.n)]
    for u, v in g.edges:
        if u != v:
            iu, iv = index[u], index[v]
            mult[iu][iv] += 1
            mult[iv][iu] += 1
    if any(not c for c in mult):
        return 0
    neighbours = [sorted(c.items()) for c in mult]
    full = (1 << g.n) - 1
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * g.n + 1000))

    @lru_cache(maxsize=None)
    def count(mask: int) -> int:
        if mask == full:
            return 1
        free = ~mask & full
        i = (free & -free).bit_length() - 1
        total = 0
        for j, c in neighbours[i]:
            if not mask >> j & 1 and j != i:
                total += c * count(mask | (1 << i) | (1 << j))
        return total

    return count(0)


def _bareiss_det(matrix: list[list[int]]) -> int:
    a = [row[:] for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def count_spanning_trees(g: Multigraph) -> int:
    """Matrix-Tree theorem: any cofactor of the Laplacian (loops ignored)."""
    if not is_connected(g):
        raise ValueError("spanning trees are counted for connected graphs only")
    n = g.n
    if n <= 1:
        return 1
    lap = [[0] * n for _ in range(n)]
    for u, v in g.edges:
        if u == v:
            continue
        lap[u - 1][u - 1] += 1
        lap[v - 1][v - 1] += 1
        lap[u - 1][v - 1] -= 1
        lap[v - 1][u - 1] -= 1
    minor = [row[1:] for row in lap[1:]]
    return _bareiss_det(minor)
