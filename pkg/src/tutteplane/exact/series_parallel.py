"""Parallel and series reduction of edge-weighted graphs for the random-cluster sum.

Each step replaces a small subgraph by one equivalent edge and records the
scalar that keeps ``Z`` unchanged.  Loops are peeled off as ``(1 + w)`` factors.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Iterable, NamedTuple

from tutteplane.exact.core import WeightedGraph
from tutteplane.multigraph import Multigraph
from tutteplane.rational import Q, RationalLike

log = logging.getLogger(__name__)


class SimplifyResult(NamedTuple):
    graph: WeightedGraph
    scale: Fraction
    skipped: tuple[str, ...]


def parallel_weight(a1: Fraction, a2: Fraction) -> Fraction:
    return (1 + a1) * (1 + a2) - 1


def series_weight(q: Fraction, a1: Fraction, a2: Fraction) -> tuple[Fraction, Fraction]:
    """Weight of the single edge replacing a path ``a1, a2`` and the scale it costs.

    ``q / w = (q/a1 + 1)(q/a2 + 1) - 1``, written without dividing by the weights.
    """
    s = q + a1 + a2
    if s == 0:
        raise ZeroDivisionError("series step undefined: q + a1 + a2 = 0")
    return a1 * a2 / s, s


def simplify_parallel_series(
    gw: WeightedGraph, q: RationalLike, terminals: Iterable[int] = ()
) -> SimplifyResult:
    """Reduce until no loop, parallel pair or suppressible degree-2 vertex remains.

    Returns the reduced graph and ``scale`` with ``Z(original) = scale * Z(reduced)``.
    Degree-2 vertices listed in ``terminals`` are kept.  Series steps need
    ``q != 0``; at ``q = 0`` only parallel and loop steps run.
    """
    q = Q(q)
    keep = set(terminals)
    n = gw.n
    edges = [(min(u, v), max(u, v), w) for (u, v), w in zip(gw.graph.edges, gw.weights)]
    scale = Fraction(1)
    skipped: list[str] = []
    blocked: set[int] = set()

    changed = True
    while changed:
        changed = False
        # loops
        rest = []
        for u, v, w in edges:
            if u == v:
                scale *= 1 + w
                changed = True
            else:
                rest.append((u, v, w))
        edges = rest
        # parallel classes, merged into the first occurrence
        merged: dict[tuple[int, int], int] = {}
        rest = []
        for u, v, w in edges:
            key = (u, v)
            if key in merged:
                i = merged[key]
                rest[i] = (u, v, parallel_weight(rest[i][2], w))
                changed = True
            else:
                merged[key] = len(rest)
                rest.append((u, v, w))
        edges = rest
        if changed or q == 0:
            continue
        # one series step per pass keeps the bookkeeping simple
        incident: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
        for i, (u, v, _) in enumerate(edges):
            incident[u].append(i)
            incident[v].append(i)
        for v in range(1, n + 1):
            if v in keep or v in blocked or len(incident[v]) != 2:
                continue
            i, j = incident[v]
            a = edges[i][0] if edges[i][1] == v else edges[i][1]
            b = edges[j][0] if edges[j][1] == v else edges[j][1]
            try:
                w, s = series_weight(q, edges[i][2], edges[j][2])
            except ZeroDivisionError as exc:
                msg = f"vertex {v}: {exc}"
                skipped.append(msg)
                log.info("skipping series step at %s", msg)
                blocked.add(v)
                continue
            scale *= s
            others = [e for k, e in enumerate(edges) if k not in (i, j)]
            others.append((min(a, b), max(a, b), w))
            n, edges, keep, blocked = _remove_vertex(n, others, keep, blocked, v)
            changed = True
            break

    graph = Multigraph(n, tuple((u, v) for u, v, _ in edges))
    return SimplifyResult(WeightedGraph(graph, tuple(w for _, _, w in edges)), scale, tuple(skipped))


def _remove_vertex(n, edges, keep, blocked, v):
    def relabel(x: int) -> int:
        return x - 1 if x > v else x

    edges = [(relabel(a), relabel(b), w) for a, b, w in edges]
    edges = [(min(a, b), max(a, b), w) for a, b, w in edges]
    keep = {relabel(x) for x in keep if x != v}
    blocked = {relabel(x) for x in blocked if x != v}
    return n - 1, edges, keep, blocked
