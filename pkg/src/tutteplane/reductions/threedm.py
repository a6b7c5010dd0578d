"""Counting 3-d matchings with the random-cluster sum near the line ``beta = -q``.

A rooted tree ``T`` (weight ``beta2``, close to ``-q``) is augmented by link
edges ``L`` (weight ``beta1``, small).  With ``beta2 = -q`` exactly, the only
link sets that contribute at lowest order are the minimum augmentations that
make the tree 2-edge-connected, and those correspond to the 3-d matchings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from tutteplane.exact.core import WeightedGraph
from tutteplane.exact.frontier import z_frontier
from tutteplane.multigraph import Multigraph, bridges, component_labels, is_connected
from tutteplane.rational import Q, RationalLike
from tutteplane.reductions.threeway import HypothesisError, qbar


@dataclass(frozen=True)
class ThreeDMInstance:
    n: int
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise HypothesisError("n must be positive")
        for t in self.triples:
            if len(t) != 3 or any(not 1 <= i <= self.n for i in t):
                raise HypothesisError(f"triple {t} has an index outside 1..{self.n}")

    @property
    def m(self) -> int:
        return len(self.triples)


@dataclass(frozen=True)
class DualLayout:
    """Vertex numbering and edge classes of the augmentation graph."""

    graph: Multigraph
    tree: tuple[int, ...]
    links: tuple[int, ...]
    root: int


def fredjaja_layout(inst: ThreeDMInstance) -> DualLayout:
    """Root, then ``w_i``, ``x_i``, ``y_i``, then ``a``, ``a-bar`` per triple.

    Tree edges: ``r-w_i``, ``r-x_i``, ``r-y_i``, ``w_i-a``, ``w_i-a-bar``.
    Link edges: ``x_j-a``, ``a-a-bar``, ``a-bar-y_k``.
    """
    n = inst.n
    r = 1
    w = lambda i: 1 + i  # noqa: E731
    x = lambda j: 1 + n + j  # noqa: E731
    y = lambda k: 1 + 2 * n + k  # noqa: E731
    edges: list[tuple[int, int]] = []
    tree: list[int] = []
    links: list[int] = []

    def add(u: int, v: int, bucket: list[int]) -> None:
        bucket.append(len(edges))
        edges.append((u, v))

    for i in range(1, n + 1):
        add(r, w(i), tree)
        add(r, x(i), tree)
        add(r, y(i), tree)
    for t, (i, j, k) in enumerate(inst.triples):
        a = 3 * n + 2 + 2 * t
        a_bar = a + 1
        add(w(i), a, tree)
        add(w(i), a_bar, tree)
        add(x(j), a, links)
        add(a, a_bar, links)
        add(a_bar, y(k), links)
    graph = Multigraph(3 * n + 2 * inst.m + 1, tuple(edges))
    return DualLayout(graph, tuple(tree), tuple(links), r)


def build_fredjaja_graph(inst: ThreeDMInstance, beta1: RationalLike, beta2: RationalLike) -> WeightedGraph:
    layout = fredjaja_layout(inst)
    weights = [Fraction(0)] * layout.graph.m
    for i in layout.tree:
        weights[i] = Q(beta2)
    for i in layout.links:
        weights[i] = Q(beta1)
    return WeightedGraph(layout.graph, tuple(weights))


def three_dm_constant(q: RationalLike, n: int, m: int) -> Fraction:
    """``(-1)^n q^(2n+m+1) (q-1)^m (q-2)^n``."""
    q = Q(q)
    return (-1) ** n * q ** (2 * n + m + 1) * (q - 1) ** m * (q - 2) ** n


# -- parameters ---------------------------------------------------------------

@dataclass(frozen=True)
class DualParams:
    q: Fraction
    alpha1: Fraction
    alpha2: Fraction
    epsilon: Fraction
    delta: Fraction
    k1: int
    k2: int
    beta1: Fraction
    beta2: Fraction
    Q: Fraction


def dual_params(
    q: RationalLike,
    alpha1: RationalLike,
    alpha2: RationalLike,
    *,
    vertices: int,
    tree: int,
    links: int,
    size: int,
    constant: RationalLike,
) -> DualParams:
    """Stretch lengths making ``|beta1/q| <= eps`` and ``|1 + q/beta2| <= delta``.

    ``eps`` and ``delta`` are the largest values for which each of the two
    error terms is at most 1/8 of ``|Q beta1^size|``; a k-stretch of weight
    ``alpha`` gives ``q/beta = (q/alpha + 1)^k - 1``.
    """
    q, a1, a2, big_q = Q(q), Q(alpha1), Q(alpha2), Q(constant)
    if q == 0 or a1 == 0 or a2 == 0:
        raise HypothesisError("q and both weights must be non-zero")
    r1, r2 = q / a1, q / a2
    if -2 <= r1 <= 0:
        raise HypothesisError(f"q/alpha1 = {r1} must lie outside [-2, 0]")
    if not -2 < r2 < 0:
        raise HypothesisError(f"q/alpha2 = {r2} must lie in (-2, 0)")
    budget = (2 * qbar(q)) ** (vertices + tree + links)
    epsilon = min(Fraction(1), abs(q**size * big_q) / (8 * budget))
    k1 = 1
    while abs((r1 + 1) ** k1 - 1) < 1 / epsilon:
        k1 += 1
    beta1 = q / ((r1 + 1) ** k1 - 1)
    delta = min(Fraction(1, 2), abs(big_q * beta1**size) / (8 * tree * budget))
    k2 = 1
    while abs((r2 + 1) ** k2) > delta:
        k2 += 1
    beta2 = q / ((r2 + 1) ** k2 - 1)
    p = DualParams(q, a1, a2, epsilon, delta, k1, k2, beta1, beta2, big_q)
    if abs(beta1 / q) > epsilon or abs(1 + q / beta2) > delta:
        raise HypothesisError("stretch lengths failed to meet the bounds")
    return p


def three_dm_params(inst: ThreeDMInstance, q: RationalLike, alpha1: RationalLike, alpha2: RationalLike) -> DualParams:
    q = Q(q)
    if q in (0, 1, 2):
        raise HypothesisError(f"q = {q} must not be 0, 1 or 2")
    n, m = inst.n, inst.m
    return dual_params(
        q, alpha1, alpha2,
        vertices=3 * n + 2 * m + 1, tree=3 * n + 2 * m, links=3 * m, size=n + m,
        constant=three_dm_constant(q, n, m),
    )


# -- the link-set expansion ----------------------------------------------------

def link_term(layout: DualLayout, chosen: frozenset[int], q: RationalLike, beta2: RationalLike) -> Fraction:
    """``h(B, beta2) = Z(G \\ (L - B) / B)`` with every tree edge at ``beta2``."""
    return z_frontier(WeightedGraph.constant(contract_onto(layout.graph, chosen, layout.tree), Q(beta2)), q)


def contract_onto(g: Multigraph, contracted, kept) -> Multigraph:
    """Contract the edges ``contracted`` and keep only the edges ``kept`` (others deleted)."""
    labels = component_labels(Multigraph(g.n, tuple(g.edges[i] for i in contracted)))
    index: dict[int, int] = {}
    for v in range(1, g.n + 1):
        index.setdefault(labels[v], len(index) + 1)
    edges = tuple((index[labels[g.edges[i][0]]], index[labels[g.edges[i][1]]]) for i in kept)
    return Multigraph(len(index), edges)


def is_bridge_connected(n: int, edges) -> bool:
    g = Multigraph(n, tuple(edges))
    return is_connected(g) and not bridges(g)


def triples_of(layout: DualLayout, inst: ThreeDMInstance, chosen: frozenset[int]) -> frozenset[int]:
    """Triples whose two outer links (``x-a`` and ``a-bar-y``) are both chosen."""
    out = set()
    for t in range(inst.m):
        outer_a, _, outer_b = layout.links[3 * t: 3 * t + 3]
        if outer_a in chosen and outer_b in chosen:
            out.add(t)
    return frozenset(out)


@dataclass
class ObservationReport:
    checked: int = 0
    below_size_nonzero: int = 0
    wrong_value: int = 0
    bijection_ok: bool = True

    @property
    def ok(self) -> bool:
        return self.below_size_nonzero == 0 and self.wrong_value == 0 and self.bijection_ok


def check_observations(inst: ThreeDMInstance, q: RationalLike) -> ObservationReport:
    """Enumerate every link set at ``beta2 = -q`` and check the three structural facts.

    1. ``h(B, -q) = 0`` when ``|B| < n + m``.
    2. For ``|B| = n + m``: ``h = Q`` if ``(V, T + B)`` is 2-edge-connected, else 0.
    3. Those link sets map bijectively onto the 3-d matchings.
    """
    q = Q(q)
    layout = fredjaja_layout(inst)
    g = layout.graph
    size = inst.n + inst.m
    big_q = three_dm_constant(q, inst.n, inst.m)
    report = ObservationReport()
    images = []
    for r in range(size + 1):
        for chosen in itertools.combinations(layout.links, r):
            chosen = frozenset(chosen)
            h = link_term(layout, chosen, q, -q)
            report.checked += 1
            if r < size:
                report.below_size_nonzero += h != 0
                continue
            edges = [g.edges[i] for i in layout.tree] + [g.edges[i] for i in chosen]
            good = is_bridge_connected(g.n, edges)
            report.wrong_value += h != (big_q if good else 0)
            if good:
                images.append(triples_of(layout, inst, chosen))
    solutions = set(three_dm_solutions(inst))
    report.bijection_ok = len(images) == len(set(images)) and set(images) == solutions
    return report


# -- recovery and brute force ---------------------------------------------------

def recover_3dm_count(z: RationalLike, q: RationalLike, beta1: RationalLike, n: int, m: int) -> tuple[int, Fraction]:
    """``(N, residual)`` with ``N`` the nearest integer to ``Z / (Q beta1^(n+m))``."""
    est = Q(z) / (three_dm_constant(q, n, m) * Q(beta1) ** (n + m))
    count = round(est)
    residual = abs(est - count)
    if residual > Fraction(1, 4) or not 0 <= count <= comb(m, n):
        raise ArithmeticError(f"estimate {float(est):.6g} is not within 1/4 of an admissible count")
    return int(count), residual


def three_dm_solutions(inst: ThreeDMInstance) -> list[frozenset[int]]:
    full = set(range(1, inst.n + 1))
    out = []
    for pick in itertools.combinations(range(inst.m), inst.n):
        chosen = [inst.triples[t] for t in pick]
        if all({t[c] for t in chosen} == full for c in range(3)):
            out.append(frozenset(pick))
    return out


def count_3dm(inst: ThreeDMInstance) -> int:
    return len(three_dm_solutions(inst))


def run_3dm(inst: ThreeDMInstance, q: RationalLike, alpha1: RationalLike, alpha2: RationalLike):
    """Build, evaluate exactly and recover; returns ``(params, z, N, residual)``."""
    p = three_dm_params(inst, q, alpha1, alpha2)
    z = z_frontier(build_fredjaja_graph(inst, p.beta1, p.beta2), p.q)
    count, residual = recover_3dm_count(z, p.q, p.beta1, inst.n, inst.m)
    return p, z, count, residual
