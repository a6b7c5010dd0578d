"""Brute-force evaluation by enumerating every edge subset.

These are the reference oracles: slow, obviously correct, capped.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Sequence

from tutteplane.exact.core import TuttePoint, WeightedGraph, check_subset_cap
from tutteplane.multigraph import Multigraph, components, is_connected
from tutteplane.rational import Q, RationalLike, pow0


class ConversionUndefined(ValueError):
    """The Tutte/random-cluster conversion needs ``x != 1`` and ``y != 1``."""


def subset_table(
    vertex_count: int,
    edges: Sequence[tuple[int, int]],
    weights: Sequence[Fraction] | None = None,
    cap: int | None = None,
) -> dict[tuple[int, int], Fraction | int]:
    """Aggregate over all ``A`` of ``E``: ``(kappa(A), |A|) -> sum of w(A)``.

    With ``weights=None`` the values are plain subset counts.  Uses a depth-first
    walk over the edges with an undoable union-find, so each subset costs O(1)
    amortised beyond the recursion itself.
    """
    m = len(edges)
    check_subset_cap(m, cap)
    parent = list(range(vertex_count + 1))
    size = [1] * (vertex_count + 1)
    table: dict[tuple[int, int], Fraction | int] = defaultdict(int)
    unit = 1 if weights is None else Fraction(1)

    def find(a: int) -> int:
        while parent[a] != a:
            a = parent[a]
        return a

    def walk(i: int, kappa: int, count: int, wprod) -> None:
        if i == m:
            table[(kappa, count)] += wprod
            return
        walk(i + 1, kappa, count, wprod)
        w = 1 if weights is None else weights[i]
        u, v = edges[i]
        ru, rv = find(u), find(v)
        if ru == rv:
            walk(i + 1, kappa, count + 1, wprod * w)
            return
        if size[ru] < size[rv]:
            ru, rv = rv, ru
        parent[rv] = ru
        size[ru] += size[rv]
        walk(i + 1, kappa - 1, count + 1, wprod * w)
        size[ru] -= size[rv]
        parent[rv] = rv

    walk(0, vertex_count, 0, unit)
    return dict(table)


def z_bruteforce(gw: WeightedGraph, q: RationalLike, cap: int | None = None) -> Fraction:
    """``Z(G; q, w) = sum over A of w(A) q^kappa(A)``, by enumeration."""
    q = Q(q)
    table = subset_table(gw.n, gw.graph.edges, gw.weights, cap)
    return sum((total * pow0(q, kappa) for (kappa, _), total in table.items()), Fraction(0))


def tutte_bruteforce(g: Multigraph, p: TuttePoint, cap: int | None = None) -> Fraction:
    """The subset expansion of the Tutte polynomial, with ``0**0 = 1``."""
    table = subset_table(g.n, g.edges, None, cap)
    kappa_e = components(g)
    xm, ym = p.x - 1, p.y - 1
    total = Fraction(0)
    for (kappa, size), count in table.items():
        total += count * pow0(xm, kappa - kappa_e) * pow0(ym, size - g.n + kappa)
    return total


def reliability_r(gw: WeightedGraph, cap: int | None = None) -> Fraction:
    """``R(G; 0, w)``: total weight of the spanning connected edge subsets."""
    if not is_connected(gw.graph):
        raise ValueError("reliability is only defined here for connected graphs")
    table = subset_table(gw.n, gw.graph.edges, gw.weights, cap)
    one = 1 if gw.n else 0
    return sum((total for (kappa, _), total in table.items() if kappa == one), Fraction(0))


def t_from_z(z: RationalLike, p: TuttePoint, n: int, kappa: int) -> Fraction:
    """Tutte value from ``Z(G; q, y-1)`` with ``q = (x-1)(y-1)``."""
    if p.x == 1 or p.y == 1:
        raise ConversionUndefined(f"conversion undefined at x={p.x}, y={p.y}")
    return Q(z) / ((p.y - 1) ** n * (p.x - 1) ** kappa)


def z_from_t(t: RationalLike, p: TuttePoint, n: int, kappa: int) -> Fraction:
    if p.x == 1 or p.y == 1:
        raise ConversionUndefined(f"conversion undefined at x={p.x}, y={p.y}")
    return Q(t) * (p.y - 1) ** n * (p.x - 1) ** kappa
