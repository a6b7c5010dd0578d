"""Counting minimum 3-way cuts with the random-cluster sum.

The terminals of a simple connected graph are joined by a triangle of weight
``beta2`` (close to -1) while the original edges get a large weight ``beta1``.
Then ``Z`` is dominated by the subsets that separate all three terminals, and
``Z / (C(beta2) beta1^(m-c) q)`` is within 1/4 of the number of minimum cuts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from typing import NamedTuple

from tutteplane.exact.core import TuttePoint, WeightedGraph
from tutteplane.exact.frontier import reliability_frontier, tutte_eval, z_frontier
from tutteplane.multigraph import Multigraph, count_components, is_connected, parallel_gadget, stretch
from tutteplane.rational import Q, RationalLike
from tutteplane.shifts import shift_qalpha, stretch_factor_q0, thicken_alpha


class HypothesisError(ValueError):
    """A reduction was asked to run outside the parameter range it is valid for."""


@dataclass(frozen=True)
class ThreeWayCutInstance:
    graph: Multigraph
    terminals: tuple[int, int, int]
    bound: int | None = None

    def __post_init__(self) -> None:
        t = self.terminals
        if len(set(t)) != 3:
            raise HypothesisError("the three terminals must be distinct")
        if any(not 1 <= v <= self.graph.n for v in t):
            raise HypothesisError("terminal outside the vertex range")
        if not self.graph.is_simple():
            raise HypothesisError("the cut instance must be a simple graph")
        if not is_connected(self.graph):
            raise HypothesisError("the cut instance must be connected")


@dataclass(frozen=True)
class BedrockParams:
    q: Fraction
    M: Fraction
    delta: Fraction
    beta1: Fraction
    beta2: Fraction
    k1: int
    k2: int
    alpha1: Fraction
    alpha2: Fraction
    C_of_beta2: Fraction


def qbar(q: Fraction) -> Fraction:
    return max(abs(q), Fraction(1))


def cut_constant(q: RationalLike, beta2: RationalLike) -> Fraction:
    """``C(beta2) = (q-1)(q-2) + 3(q-1)(1+beta2) + (1+beta2)^3``."""
    q, b = Q(q), Q(beta2)
    return (q - 1) * (q - 2) + 3 * (q - 1) * (1 + b) + (1 + b) ** 3


def build_3waycut_gadget(inst: ThreeWayCutInstance, beta1: RationalLike, beta2: RationalLike) -> WeightedGraph:
    """Original edges at ``beta1`` followed by the terminal triangle at ``beta2``."""
    t1, t2, t3 = inst.terminals
    g = inst.graph
    graph = Multigraph(g.n, g.edges + ((t1, t2), (t2, t3), (t1, t3)))
    return WeightedGraph(graph, (Q(beta1),) * g.m + (Q(beta2),) * 3)


def bedrock_params(m: int, n: int, q: RationalLike, alpha1: RationalLike, alpha2: RationalLike) -> BedrockParams:
    """Smallest thickenings ``k1``, ``k2`` that make ``beta1`` large and ``beta2`` near -1.

    ``k1`` comes first (``beta1 >= M``), then ``delta`` (which depends on
    ``beta1``), then ``k2`` (``|1 + beta2| < delta``).
    """
    q, a1, a2 = Q(q), Q(alpha1), Q(alpha2)
    if q in (0, 1, 2):
        raise HypothesisError(f"q = {q} must not be 0, 1 or 2")
    if -2 <= a1 <= 0:
        raise HypothesisError(f"alpha1 = {a1} must lie outside [-2, 0]")
    if not -2 < a2 < 0:
        raise HypothesisError(f"alpha2 = {a2} must lie in (-2, 0)")
    qb = qbar(q)
    big_m = 8 * 2**m * qb**n
    k1 = 1
    while thicken_alpha(a1, k1) < big_m:
        k1 += 1
    beta1 = thicken_alpha(a1, k1)
    c_minus1 = abs(cut_constant(q, -1))
    delta = c_minus1 / (448 * (2 * beta1) ** m * qb**n)
    # keep |C(beta2) - C(-1)| <= 3|q-1| delta + delta^3 within half of |C(-1)|
    while 3 * abs(q - 1) * delta + delta**3 > c_minus1 / 2:
        delta /= 2
    k2 = 1
    while abs((a2 + 1) ** k2) >= delta:
        k2 += 1
    beta2 = thicken_alpha(a2, k2)
    params = BedrockParams(q, big_m, delta, beta1, beta2, k1, k2, a1, a2, cut_constant(q, beta2))
    check_bedrock(params, m, n)
    return params


def check_bedrock(p: BedrockParams, m: int, n: int) -> None:
    qb = qbar(p.q)
    c_minus1 = abs(cut_constant(p.q, -1))
    problems = []
    if p.beta1 < p.M:
        problems.append("beta1 < M")
    if abs(1 + p.beta2) > p.delta:
        problems.append("|1 + beta2| > delta")
    if abs(p.C_of_beta2) < c_minus1 / 2:
        problems.append("|C(beta2)| < |C(-1)|/2")
    if p.delta > c_minus1 / (448 * (2 * p.beta1) ** m * qb**n):
        problems.append("delta too large for the error budget")
    if problems:
        raise HypothesisError("; ".join(problems))


class CutRecovery(NamedTuple):
    c: int
    N: int
    residual: Fraction


def recover_cut_count(z: RationalLike, params: BedrockParams, m: int) -> CutRecovery:
    """``(c, N, residual)``: minimum cut size, number of minimum cuts, and ``|estimate - N|``.

    ``c`` is the unique size whose rescaled estimate rounds into ``[1, 2^m]``
    within 1/4.
    """
    z = Q(z)
    found = []
    for c in range(0, m + 1):
        est = z / (params.C_of_beta2 * params.beta1 ** (m - c) * params.q)
        n_round = round(est)
        residual = abs(est - n_round)
        if 1 <= n_round <= 2**m and residual <= Fraction(1, 4):
            found.append(CutRecovery(c, int(n_round), residual))
    if len(found) != 1:
        raise ArithmeticError(f"expected exactly one admissible cut size, found {len(found)}")
    return found[0]


def min_3way_cuts(inst: ThreeWayCutInstance) -> tuple[int, int]:
    """Brute force: ``(c, N)`` over all edge subsets whose removal separates the terminals."""
    g = inst.graph
    t1, t2, t3 = inst.terminals
    best, count = None, 0
    for kept_mask in range(1 << g.m):
        kept = [g.edges[i] for i in range(g.m) if kept_mask >> i & 1]
        label = _labels(g.n, kept)
        if len({label[t1], label[t2], label[t3]}) != 3:
            continue
        size = g.m - len(kept)
        if best is None or size < best:
            best, count = size, 1
        elif size == best:
            count += 1
    if best is None:
        raise ValueError("terminals can never be separated")
    return best, count


def _labels(n: int, edges) -> list[int]:
    parent = list(range(n + 1))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in edges:
        parent[find(u)] = find(v)
    return [find(v) for v in range(n + 1)]


PATTERNS = ("1|2|3", "1|2,3", "2|1,3", "3|1,2", "1,2,3")


def _pattern(label: list[int], t: tuple[int, int, int]) -> str:
    a, b, c = (label[v] for v in t)
    if a == b == c:
        return "1,2,3"
    if a != b and b != c and a != c:
        return "1|2|3"
    if b == c:
        return "1|2,3"
    if a == c:
        return "2|1,3"
    return "3|1,2"


def partition_sums(inst: ThreeWayCutInstance, beta1: RationalLike, beta2: RationalLike, q: RationalLike) -> dict[str, Fraction]:
    """The five terms of ``Z`` split by how ``A`` (original edges only) joins the terminals.

    Also returns ``"reduced"``: ``sum over separating A of w(A) q^(kappa(A)-2)``,
    which times ``C(beta2)`` must equal the ``"1|2|3"`` term.
    """
    b1, b2, q = Q(beta1), Q(beta2), Q(q)
    g = inst.graph
    t1, t2, t3 = inst.terminals
    tri = ((t1, t2), (t2, t3), (t1, t3))
    sums = {p: Fraction(0) for p in PATTERNS}
    reduced = Fraction(0)
    for kept_mask in range(1 << g.m):
        kept = [g.edges[i] for i in range(g.m) if kept_mask >> i & 1]
        w_a = b1 ** len(kept)
        pattern = _pattern(_labels(g.n, kept), inst.terminals)
        kappa_a = count_components(g.n, kept)
        if pattern == "1|2|3":
            reduced += w_a * q ** (kappa_a - 2)
        for size in range(4):
            for extra in itertools.combinations(tri, size):
                sums[pattern] += w_a * b2**size * q ** count_components(g.n, kept + list(extra))
    sums["reduced"] = reduced
    return sums


def error_bounds(params: BedrockParams, m: int, n: int) -> dict[str, Fraction]:
    """Upper bounds on the all-joined and the one-separated terms."""
    q, qb, d = params.q, qbar(params.q), params.delta
    base = (2 * params.beta1) ** m * abs(q) * qb ** (n - 1)
    return {"1,2,3": base * d**3, "one-separated": 9 * base * d}


def expand_with_thickenings(
    gw: WeightedGraph, q: RationalLike, alpha1: RationalLike, k1: int, alpha2: RationalLike, k2: int
) -> tuple[WeightedGraph, Fraction]:
    """Replace each ``beta1`` edge by ``k1`` parallel ``alpha1`` edges and each ``beta2``
    edge by ``k2`` parallel ``alpha2`` edges, where ``beta_i = (alpha_i + 1)^k_i - 1``.

    Returns ``(G', scale)`` with ``Z(G-hat) = scale * Z(G')``; the scale is the
    product of the per-edge 2-sum factors (each is 1 for a thickening).
    """
    q, a1, a2 = Q(q), Q(alpha1), Q(alpha2)
    b1, b2 = thicken_alpha(a1, k1), thicken_alpha(a2, k2)
    if b1 == b2:
        raise ValueError("beta1 and beta2 coincide; edge roles are ambiguous")
    n1 = shift_qalpha(parallel_gadget(k1), q, a1).N
    n2 = shift_qalpha(parallel_gadget(k2), q, a2).N
    edges: list[tuple[int, int]] = []
    weights: list[Fraction] = []
    scale = Fraction(1)
    for (u, v), w in zip(gw.graph.edges, gw.weights):
        if w == b1:
            k, alpha, factor = k1, a1, n1
        elif w == b2:
            k, alpha, factor = k2, a2, n2
        else:
            raise ValueError(f"edge weight {w} is neither beta1 nor beta2")
        edges += [(u, v)] * k
        weights += [alpha] * k
        scale *= factor
    return WeightedGraph(Multigraph(gw.n, tuple(edges)), tuple(weights)), scale


def evaluate_gadget(gw: WeightedGraph, q: RationalLike) -> Fraction:
    return z_frontier(gw, q)


# -- reliability (q = 0) variant ---------------------------------------------

@dataclass(frozen=True)
class ZeroStretchInstance:
    graph: WeightedGraph
    scale: Fraction
    k: int
    alpha: Fraction
    alpha2: Fraction


def q0_stretch_params(y: RationalLike) -> tuple[Fraction, int, Fraction]:
    """``(alpha, k, alpha2)`` with ``alpha = y - 1``, ``k = floor(-alpha)``, ``alpha2 = alpha/k``."""
    y = Q(y)
    if not y < -1:
        raise HypothesisError(f"y = {y} must be below -1")
    alpha = y - 1
    k = int((-alpha).__floor__())
    alpha2 = alpha / k
    if not -2 < alpha2 < 0:
        raise HypothesisError("alpha/k left (-2, 0)")
    return alpha, k, alpha2


def build_q0_stretch_instance(gw: WeightedGraph, y: RationalLike) -> ZeroStretchInstance:
    """k-stretch every ``alpha2`` edge of a connected ``{alpha, alpha2}``-weighted graph.

    The result has constant weight ``alpha`` and
    ``R(G; 0, w) = scale * R(G-hat; 0, alpha)`` with ``scale = (1/(k alpha^(k-1)))^m2``.
    """
    alpha, k, alpha2 = q0_stretch_params(y)
    if not is_connected(gw.graph):
        raise HypothesisError("the reliability instance must be connected")
    host_edges: list[tuple[int, int]] = []
    stretched: list[tuple[int, int]] = []
    for e, w in zip(gw.graph.edges, gw.weights):
        if w == alpha:
            host_edges.append(e)
        elif w == alpha2:
            stretched.append(e)
        else:
            raise ValueError(f"edge weight {w} is neither alpha = {alpha} nor alpha2 = {alpha2}")
    long_part = stretch(Multigraph(gw.n, tuple(stretched)), k)
    graph = Multigraph(long_part.n, tuple(host_edges) + long_part.edges)
    scale = stretch_factor_q0(alpha, k) ** len(stretched)
    return ZeroStretchInstance(WeightedGraph.constant(graph, alpha), scale, k, alpha, alpha2)


def check_q0_identity(gw: WeightedGraph, y: RationalLike) -> bool:
    """``R(G; 0, w) == scale (y-1)^(n-1) T(G-hat; 1, y)``."""
    y = Q(y)
    inst = build_q0_stretch_instance(gw, y)
    g_hat = inst.graph.graph
    lhs = reliability_frontier(gw)
    mid = inst.scale * reliability_frontier(inst.graph)
    rhs = inst.scale * (y - 1) ** (g_hat.n - 1) * tutte_eval(g_hat, TuttePoint(1, y))
    return lhs == mid == rhs
