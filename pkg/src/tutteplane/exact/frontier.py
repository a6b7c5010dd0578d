"""Frontier (transfer-matrix) evaluation of the random-cluster sum.

Edges are processed in a locality-friendly order while a table maps each set
partition of the currently active vertices to the partial sum of
``w(A) q^(closed components)`` over edge subsets inducing that partition.  A
vertex leaves the frontier after its last edge; if it was the last member of
its block the block is closed and contributes one factor of ``q``.

Cost is exponential only in the frontier width, so gadget graphs with dozens
of edges (long parallel bundles, stretched paths, apex gadgets) are cheap.
The same sweep, run over exponent pairs instead of numbers, produces the
integer rank-generating polynomial used for Tutte evaluation at many points.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence, TypeVar

from tutteplane.exact.core import TuttePoint, WeightedGraph
from tutteplane.multigraph import Multigraph, components, is_connected
from tutteplane.rational import Q, RationalLike, pow0

V = TypeVar("V")


def elimination_order(vertex_count: int, edges: Sequence[tuple[int, int]]) -> list[int]:
    """Edge indices ordered so that the active frontier stays narrow.

    Vertices are visited greedily, each time taking the unvisited vertex with
    the most already-visited neighbours (ties: fewest unvisited neighbours,
    then lowest id); edges are sorted by when both endpoints have been seen.
    """
    adj: dict[int, list[int]] = defaultdict(list)
    for u, v in edges:
        if u != v:
            adj[u].append(v)
            adj[v].append(u)
    touched = sorted({u for e in edges for u in e})
    position: dict[int, int] = {}
    seen_count: dict[int, int] = defaultdict(int)
    remaining = set(touched)
    while remaining:
        best = min(
            remaining,
            key=lambda v: (-seen_count[v], sum(1 for w in adj[v] if w in remaining), v),
        )
        remaining.discard(best)
        position[best] = len(position)
        for w in adj[best]:
            if w in remaining:
                seen_count[w] += 1
    return sorted(
        range(len(edges)),
        key=lambda i: (max(position[edges[i][0]], position[edges[i][1]]), min(position[edges[i][0]], position[edges[i][1]]), i),
    )


def _canonical(labels: tuple[int, ...]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(lab, len(seen)) for lab in labels)


def frontier_sum(
    vertex_count: int,
    edges: Sequence[tuple[int, int]],
    include: Callable[[V, int], V],
    close: Callable[[V], V],
    add: Callable[[V, V], V],
    one: V,
) -> V:
    """Generic sweep: ``include(value, i)`` accounts for taking edge ``i``,
    ``close(value)`` for completing one component."""
    order = elimination_order(vertex_count, edges)
    last_use: dict[int, int] = {}
    for step, i in enumerate(order):
        for v in edges[i]:
            last_use[v] = step

    active: list[int] = []
    states: dict[tuple[int, ...], V] = {(): one}

    def accumulate(table: dict, key, value) -> None:
        prev = table.get(key)
        table[key] = value if prev is None else add(prev, value)

    for step, i in enumerate(order):
        u, v = edges[i]
        for x in (u, v):
            if x not in active:
                active.append(x)
                states = {key + (len(set(key)),): val for key, val in states.items()}
        iu, iv = active.index(u), active.index(v)
        new_states: dict[tuple[int, ...], V] = {}
        for key, val in states.items():
            accumulate(new_states, key, val)
            taken = include(val, i)
            lu, lv = key[iu], key[iv]
            if lu == lv:
                accumulate(new_states, key, taken)
            else:
                merged = _canonical(tuple(lu if lab == lv else lab for lab in key))
                accumulate(new_states, merged, taken)
        states = new_states
        for x in sorted({u, v}, key=active.index, reverse=True):
            if last_use[x] != step:
                continue
            ix = active.index(x)
            retired: dict[tuple[int, ...], V] = {}
            for key, val in states.items():
                lab = key[ix]
                rest = key[:ix] + key[ix + 1:]
                if lab not in rest:
                    val = close(val)
                accumulate(retired, _canonical(rest), val)
            states = retired
            active.pop(ix)

    assert not active and len(states) == 1
    (total,) = states.values()
    isolated = vertex_count - len(last_use)
    for _ in range(isolated):
        total = close(total)
    return total


def z_frontier(gw: WeightedGraph, q: RationalLike) -> Fraction:
    """``Z(G; q, w)`` exactly, via the frontier sweep."""
    q = Q(q)
    weights = gw.weights
    return Fraction(
        frontier_sum(
            gw.n,
            gw.graph.edges,
            include=lambda val, i: val * weights[i],
            close=lambda val: val * q,
            add=lambda a, b: a + b,
            one=Fraction(1),
        )
    )


def _poly_shift(poly: dict[tuple[int, int], int], dc: int, da: int) -> dict[tuple[int, int], int]:
    return {(c + dc, a + da): coeff for (c, a), coeff in poly.items()}


def _poly_add(p1: dict, p2: dict) -> dict:
    out = dict(p1)
    for key, coeff in p2.items():
        out[key] = out.get(key, 0) + coeff
    return out


@lru_cache(maxsize=4096)
def rank_table(g: Multigraph) -> dict[tuple[int, int], int]:
    """Integer table ``(kappa(A), |A|) -> number of subsets A``.

    Same content as the brute-force subset table with unit weights, computed
    by the frontier sweep.  Cached per (immutable) graph.
    """
    return frontier_sum(
        g.n,
        g.edges,
        include=lambda poly, i: _poly_shift(poly, 0, 1),
        close=lambda poly: _poly_shift(poly, 1, 0),
        add=_poly_add,
        one={(0, 0): 1},
    )


def tutte_eval(g: Multigraph, p: TuttePoint) -> Fraction:
    """``T(G; x, y)`` from the cached rank table; valid at every rational point."""
    table = rank_table(g)
    kappa_e = components(g)
    xm, ym = p.x - 1, p.y - 1
    total = Fraction(0)
    for (kappa, size), count in table.items():
        if count:
            total += count * pow0(xm, kappa - kappa_e) * pow0(ym, size - g.n + kappa)
    return total


def z_constant(g: Multigraph, q: RationalLike, alpha: RationalLike) -> Fraction:
    """``Z(G; q, alpha)`` with every edge weighted ``alpha``, from the rank table."""
    q, alpha = Q(q), Q(alpha)
    return sum((count * pow0(q, kappa) * pow0(alpha, size) for (kappa, size), count in rank_table(g).items()), Fraction(0))


def reliability_constant(g: Multigraph, alpha: RationalLike) -> Fraction:
    """``R(G; 0, alpha)`` for a connected graph with constant weight ``alpha``."""
    if not is_connected(g):
        raise ValueError("reliability is only defined here for connected graphs")
    alpha = Q(alpha)
    target = 1 if g.n else 0
    return sum((count * pow0(alpha, size) for (kappa, size), count in rank_table(g).items() if kappa == target), Fraction(0))


def reliability_frontier(gw: WeightedGraph) -> Fraction:
    """``R(G; 0, w)`` for a connected weighted graph via the frontier sweep.

    Tracks the weight of subsets by number of closed components and keeps
    only the single-component part.
    """
    if not is_connected(gw.graph):
        raise ValueError("reliability is only defined here for connected graphs")
    weights = gw.weights
    # values: dict closed-components -> weight; anything with 2+ closed components is dropped
    result = frontier_sum(
        gw.n,
        gw.graph.edges,
        include=lambda val, i: {c: w * weights[i] for c, w in val.items()},
        close=lambda val: {c + 1: w for c, w in val.items() if c + 1 <= 1},
        add=lambda a, b: {c: a.get(c, 0) + b.get(c, 0) for c in set(a) | set(b)},
        one={0: Fraction(1)},
    )
    return Fraction(result.get(1 if gw.n else 0, 0))
