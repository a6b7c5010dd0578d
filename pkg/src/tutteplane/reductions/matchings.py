"""Perfect matchings and the Ising line ``q = 2``, in both directions.

Counting perfect matchings reduces to ``Z(.; 2, w)`` through an apex gadget
whose spokes sit near ``-2``.  In the other direction the Ising partition
function at ``|y| > 1`` is a weighted perfect-matching count of a cubic
expansion of the graph, and the weights become plain counts after each
original edge is swapped for a small multigraph widget.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from tutteplane.exact.core import WeightedGraph
from tutteplane.exact.counting import count_perfect_matchings
from tutteplane.exact.frontier import z_frontier
from tutteplane.multigraph import Multigraph
from tutteplane.rational import Q, RationalLike
from tutteplane.reductions.threedm import DualParams, contract_onto, dual_params, is_bridge_connected
from tutteplane.reductions.threeway import HypothesisError


# -- perfect matchings via an apex gadget ----------------------------------------

def _half(g: Multigraph) -> int:
    if g.n % 2:
        raise HypothesisError("a perfect-matching instance needs an even number of vertices")
    return g.n // 2


def matching_constant(n: int) -> Fraction:
    """``q^(n+1) (q-1)^n`` at ``q = 2``."""
    return Fraction(2) ** (n + 1)


def build_h2_matching_gadget(g: Multigraph, beta1: RationalLike, beta2: RationalLike) -> WeightedGraph:
    """Original edges at ``beta1`` followed by spokes from a new apex (the last vertex) at ``beta2``."""
    _half(g)
    apex = g.n + 1
    spokes = tuple((v, apex) for v in range(1, g.n + 1))
    graph = Multigraph(g.n + 1, g.edges + spokes)
    return WeightedGraph(graph, (Q(beta1),) * g.m + (Q(beta2),) * g.n)


def matching_params(g: Multigraph, alpha1: RationalLike, alpha2: RationalLike) -> DualParams:
    n = _half(g)
    return dual_params(
        2, alpha1, alpha2,
        vertices=g.n + 1, tree=g.n, links=g.m, size=n, constant=matching_constant(n),
    )


def recover_pm_count(z: RationalLike, beta1: RationalLike, n: int) -> tuple[int, Fraction]:
    """``(N, residual)``: nearest integer to ``2^-(n+1) beta1^-n Z``."""
    est = Q(z) / (matching_constant(n) * Q(beta1) ** n)
    count = round(est)
    residual = abs(est - count)
    if residual > Fraction(1, 4) or count < 0:
        raise ArithmeticError(f"estimate {float(est):.6g} is not within 1/4 of a non-negative integer")
    return int(count), residual


def run_matchings(g: Multigraph, alpha1: RationalLike, alpha2: RationalLike):
    """Build, evaluate exactly and recover; returns ``(params, z, N, residual)``."""
    p = matching_params(g, alpha1, alpha2)
    z = z_frontier(build_h2_matching_gadget(g, p.beta1, p.beta2), 2)
    count, residual = recover_pm_count(z, p.beta1, g.n // 2)
    return p, z, count, residual


def check_matching_observations(g: Multigraph) -> tuple[int, int]:
    """Enumerate ``B`` with ``|B| <= n`` at spoke weight ``-2``; return ``(checked, failures)``.

    ``h(B, -2)`` must vanish below size ``n`` and, at size ``n``, equal
    ``2^(n+1)`` exactly when ``B`` is a perfect matching (equivalently when
    spokes plus ``B`` are 2-edge-connected) and 0 otherwise.
    """
    n = _half(g)
    gadget = build_h2_matching_gadget(g, 1, 1).graph
    spokes = tuple(range(g.m, g.m + g.n))
    big_q = matching_constant(n)
    checked = failures = 0
    for r in range(n + 1):
        for chosen in itertools.combinations(range(g.m), r):
            minor = contract_onto(gadget, chosen, spokes)
            h = z_frontier(WeightedGraph.constant(minor, -2), 2)
            checked += 1
            if r < n:
                failures += h != 0
                continue
            covered = {v for i in chosen for v in g.edges[i]}
            matching = len(covered) == g.n
            bridge_free = is_bridge_connected(gadget.n, [gadget.edges[i] for i in spokes + chosen])
            failures += (matching != bridge_free) or h != (big_q if matching else 0)
    return checked, failures


# -- the Ising partition function as a matching count -------------------------------

@dataclass(frozen=True)
class LabelledGraph:
    """A multigraph whose edges are primary (index of the original edge) or supplementary (None)."""

    graph: Multigraph
    origin: tuple[int | None, ...]

    @property
    def primary(self) -> tuple[int, ...]:
        return tuple(i for i, o in enumerate(self.origin) if o is not None)


def _split_high_degree(g: Multigraph) -> LabelledGraph:
    """Replace each vertex of degree ``l >= 4`` by a path of ``l - 2`` degree-3 vertices."""
    ends: dict[int, list[tuple[int, int]]] = {v: [] for v in range(1, g.n + 1)}
    for i, (u, v) in enumerate(g.edges):
        ends[u].append((i, 0))
        ends[v].append((i, 1))
    new_id = 0
    port: dict[tuple[int, int], int] = {}
    supplementary: list[tuple[int, int]] = []
    for v in range(1, g.n + 1):
        incident = ends[v]
        deg = len(incident)
        if deg == 0:
            continue
        if deg < 4:
            new_id += 1
            for end in incident:
                port[end] = new_id
            continue
        path = list(range(new_id + 1, new_id + deg - 1))  # v_2 .. v_{l-1}
        new_id += deg - 2
        supplementary += list(zip(path, path[1:]))
        targets = [path[0]] + path + [path[-1]]
        for end, target in zip(incident, targets):
            port[end] = target
    edges = [(port[(i, 0)], port[(i, 1)]) for i in range(g.m)] + supplementary
    origin = tuple(range(g.m)) + (None,) * len(supplementary)
    return LabelledGraph(Multigraph(new_id, tuple(edges)), origin)


def fisher_degree_reduce(g: Multigraph) -> LabelledGraph:
    """Expand every vertex into a small cluster so that all degrees are at most 3.

    Degree ``l >= 4``: a path of ``l - 2`` degree-3 vertices first.  Then each
    degree-2 vertex becomes two vertices joined by a supplementary edge and
    each degree-3 vertex becomes a supplementary triangle.  Degree-1 vertices
    are kept as they are and isolated vertices are dropped.  Primary edges
    correspond one-to-one (and in order) to the edges of ``g``.
    """
    if any(g.is_loop(i) for i in range(g.m)):
        raise HypothesisError("loops must be removed first; each contributes a factor y")
    mid = _split_high_degree(g)
    h = mid.graph
    ends: dict[int, list[tuple[int, int]]] = {v: [] for v in range(1, h.n + 1)}
    for i, (u, v) in enumerate(h.edges):
        ends[u].append((i, 0))
        ends[v].append((i, 1))
    new_id = 0
    port: dict[tuple[int, int], int] = {}
    supplementary: list[tuple[int, int]] = []
    for v in range(1, h.n + 1):
        incident = ends[v]
        cluster = list(range(new_id + 1, new_id + len(incident) + 1))
        new_id += len(incident)
        if len(incident) == 2:
            supplementary.append((cluster[0], cluster[1]))
        elif len(incident) == 3:
            supplementary += [(cluster[0], cluster[1]), (cluster[1], cluster[2]), (cluster[0], cluster[2])]
        for end, target in zip(incident, cluster):
            port[end] = target
    edges = [(port[(i, 0)], port[(i, 1)]) for i in range(h.m)] + supplementary
    origin = mid.origin + (None,) * len(supplementary)
    return LabelledGraph(Multigraph(new_id, tuple(edges)), origin)


def ising_ratio(y: RationalLike) -> tuple[Fraction, int, int]:
    """``(nu, n1, n2)`` with ``nu = (y-1)/(y+1)`` and ``n1/n2 = 1/nu`` in lowest terms."""
    y = Q(y)
    if -1 <= y <= 1:
        raise HypothesisError(f"y = {y} must satisfy |y| > 1 so that y-1 and y+1 share a sign")
    nu = (y - 1) / (y + 1)
    inv = 1 / nu
    return nu, inv.numerator, inv.denominator


def widget_graph(reduced: LabelledGraph, n1: int, n2: int) -> Multigraph:
    """Swap every primary edge ``u-v`` for ``u =n1= a =n2= b - v`` with fresh ``a``, ``b``."""
    g = reduced.graph
    n = g.n
    edges: list[tuple[int, int]] = []
    for (u, v), origin in zip(g.edges, reduced.origin):
        if origin is None:
            edges.append((u, v))
            continue
        a, b = n + 1, n + 2
        n += 2
        edges += [(u, a)] * n1 + [(a, b)] * n2 + [(b, v)]
    return Multigraph(n, tuple(edges))


def fisher_ising_via_matchings(g: Multigraph, y: RationalLike) -> Fraction:
    """``Z(G; 2, y-1)`` from a perfect-matching count, for ``|y| > 1``.

    ``Z = y^loops * y^m 2^n (nu/(1+nu))^m #PM(G-hat) / n2^m`` with ``m`` the
    non-loop edges and ``n`` all vertices of ``g``.
    """
    y = Q(y)
    nu, n1, n2 = ising_ratio(y)
    loops = sum(1 for i in range(g.m) if g.is_loop(i))
    plain = Multigraph(g.n, tuple(e for i, e in enumerate(g.edges) if not g.is_loop(i)))
    m = plain.m
    matchings = count_perfect_matchings(widget_graph(fisher_degree_reduce(plain), n1, n2))
    return y**loops * y**m * 2**g.n * (nu / (1 + nu)) ** m * Fraction(matchings, n2**m)
