"""Deletion-contraction evaluation of the Tutte polynomial at a point."""

from __future__ import annotations

import sys
from fractions import Fraction

from tutteplane.exact.core import TuttePoint
from tutteplane.multigraph import Multigraph, contract, delete, is_bridge


def tutte_delcon(g: Multigraph, p: TuttePoint) -> Fraction:
    """Evaluate ``T(G; x, y)`` by deletion-contraction.

    Loops are peeled off as factors of ``y`` and bridges as factors of ``x``;
    otherwise the lowest-indexed remaining ordinary edge is split.  Exponential:
    intended for graphs of up to about 20 edges.
    """
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10 * g.m + 1000))
    return _delcon(g, p.x, p.y)


def _delcon(g: Multigraph, x: Fraction, y: Fraction) -> Fraction:
    factor = Fraction(1)
    while True:
        if not g.edges:
            return factor
        loops = [i for i, (u, v) in enumerate(g.edges) if u == v]
        if loops:
            factor *= y ** len(loops)
            g = Multigraph(g.vertex_count, tuple(e for e in g.edges if e[0] != e[1]))
            continue
        ordinary = None
        peeled = False
        for i in range(g.m):
            if is_bridge(g, i):
                factor *= x
                g = contract(g, i)
                peeled = True
                break
            if ordinary is None:
                ordinary = i
        if peeled:
            continue
        return factor * (_delcon(delete(g, ordinary), x, y) + _delcon(contract(g, ordinary), x, y))
