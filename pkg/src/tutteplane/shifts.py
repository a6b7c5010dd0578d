"""Shifts of evaluation points induced by gadget graphs.

A gadget ``(K, e)`` 2-summed onto every edge moves the point ``(x, y)`` to a
point ``(x', y')`` on the same hyperbola ``(x-1)(y-1) = q``; in random-cluster
coordinates it moves ``(q, alpha)`` to ``(q, alpha')``.  This module computes
those shifts exactly from the gadget, gives the closed forms for stretches and
thickenings, and checks the identities that relate the evaluations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from tutteplane.exact.core import TuttePoint, WeightedGraph
from tutteplane.exact.frontier import reliability_frontier, tutte_eval, z_constant, z_frontier
from tutteplane.multigraph import (
    DistinguishedEdgeGraph,
    Multigraph,
    components,
    contract,
    delete,
    is_connected,
    tensor_product,
    two_sum,
)
from tutteplane.rational import Q, RationalLike


class ShiftUndefinedError(ArithmeticError):
    """A shift formula hit a zero denominator.

    ``denominator`` names the vanishing expression so callers (the planner in
    particular) can report or route around it.
    """

    def __init__(self, denominator: str, detail: str = "") -> None:
        self.denominator = denominator
        super().__init__(f"shift undefined: {denominator} = 0" + (f" ({detail})" if detail else ""))


@dataclass(frozen=True)
class XYShift:
    source: TuttePoint
    target: TuttePoint
    L: Fraction
    M: Fraction
    gadget: DistinguishedEdgeGraph | None = None


@dataclass(frozen=True)
class QAlphaShift:
    q: Fraction
    alpha: Fraction
    alpha_prime: Fraction
    N: Fraction
    gadget: DistinguishedEdgeGraph | None = None


def _minors(k: DistinguishedEdgeGraph) -> tuple[Multigraph, Multigraph]:
    return delete(k.graph, k.distinguished_edge), contract(k.graph, k.distinguished_edge)


def shift_xy(k: DistinguishedEdgeGraph, p: TuttePoint) -> XYShift:
    """The point ``(x', y')`` that ``k`` shifts ``p`` to, with the factors ``L`` and ``M``."""
    k_del, k_con = _minors(k)
    t_del = tutte_eval(k_del, p)
    t_con = tutte_eval(k_con, p)
    q = p.q
    den_x = t_del - (p.x - 1) * t_con
    den_y = t_con - (p.y - 1) * t_del
    if den_x == 0:
        raise ShiftUndefinedError("T(K\\e) - (x-1) T(K/e)", f"at {p}")
    if den_y == 0:
        raise ShiftUndefinedError("T(K/e) - (y-1) T(K\\e)", f"at {p}")
    target = TuttePoint((1 - q) * t_del / den_x, (1 - q) * t_con / den_y)
    return XYShift(p, target, (1 - q) / den_y, den_y / den_x, k)


def shift_qalpha(k: DistinguishedEdgeGraph, q: RationalLike, alpha: RationalLike) -> QAlphaShift:
    """The weight ``alpha'`` simulated by ``k`` with edge weight ``alpha``, and its factor ``N``.

    At ``q = 0`` the random-cluster sum vanishes identically, so the rule is
    derived from the reliability sum instead (``K`` must be connected):
    ``alpha' = R(K\\e) / (R(K/e) - R(K\\e))`` and ``N = 1 / (R(K/e) - R(K\\e))``,
    which reduces to ``alpha/k`` for a k-stretch and ``(1+alpha)^k - 1`` for a
    k-thickening.
    """
    q, alpha = Q(q), Q(alpha)
    k_del, k_con = _minors(k)
    if q == 0:
        if not is_connected(k.graph):
            raise ValueError("at q = 0 the gadget must be connected")
        r_del = reliability_frontier(WeightedGraph.constant(k_del, alpha))
        r_con = reliability_frontier(WeightedGraph.constant(k_con, alpha))
        den = r_con - r_del
        if den == 0:
            raise ShiftUndefinedError("R(K/e) - R(K\\e)", f"at q=0, alpha={alpha}")
        return QAlphaShift(q, alpha, r_del / den, 1 / den, k)
    z_del = z_constant(k_del, q, alpha)
    z_con = z_constant(k_con, q, alpha)
    den = z_del - z_con
    if den == 0:
        raise ShiftUndefinedError("Z(K\\e) - Z(K/e)", f"at q={q}, alpha={alpha}")
    return QAlphaShift(q, alpha, (q * z_con - z_del) / den, q * (q - 1) / den, k)


# -- closed forms -------------------------------------------------------------

def stretch_point(p: TuttePoint, k: int) -> TuttePoint:
    """``(x^k, q/(x^k - 1) + 1)``."""
    if k < 1:
        raise ValueError("k must be positive")
    xk = p.x**k
    if xk == 1:
        if p.q == 0 and k == 1:
            return p
        raise ShiftUndefinedError("x^k - 1", f"at {p}, k={k}")
    return TuttePoint(xk, p.q / (xk - 1) + 1)


def thicken_point(p: TuttePoint, k: int) -> TuttePoint:
    """``(q/(y^k - 1) + 1, y^k)``."""
    if k < 1:
        raise ValueError("k must be positive")
    yk = p.y**k
    if yk == 1:
        if p.q == 0 and k == 1:
            return p
        raise ShiftUndefinedError("y^k - 1", f"at {p}, k={k}")
    return TuttePoint(p.q / (yk - 1) + 1, yk)


def stretch_alpha(q: RationalLike, alpha: RationalLike, k: int) -> Fraction:
    """Weight simulated by a path of ``k`` edges of weight ``alpha``.

    ``q/alpha' = (q/alpha + 1)^k - 1`` for ``q != 0``, and ``alpha/k`` at ``q = 0``.
    """
    q, alpha = Q(q), Q(alpha)
    if k < 1:
        raise ValueError("k must be positive")
    if q == 0:
        return alpha / k
    # q/alpha' = ((q + alpha)^k - alpha^k) / alpha^k, kept polynomial so alpha = 0 is fine
    den = (q + alpha) ** k - alpha**k
    if den == 0:
        raise ShiftUndefinedError("(q+alpha)^k - alpha^k", f"at q={q}, alpha={alpha}, k={k}")
    return q * alpha**k / den


def thicken_alpha(alpha: RationalLike, k: int) -> Fraction:
    """``(alpha + 1)^k - 1``: weight simulated by ``k`` parallel edges of weight ``alpha``."""
    if k < 1:
        raise ValueError("k must be positive")
    return (Q(alpha) + 1) ** k - 1


def stretch_factor_q0(alpha: RationalLike, k: int) -> Fraction:
    """``1 / (k alpha^(k-1))``: reliability factor of one k-stretched edge at ``q = 0``."""
    alpha = Q(alpha)
    if alpha == 0 and k > 1:
        raise ShiftUndefinedError("k alpha^(k-1)", "alpha = 0")
    return 1 / (k * alpha ** (k - 1))


# -- identities ---------------------------------------------------------------

def verify_tensor_identity(g: Multigraph, k: DistinguishedEdgeGraph, p: TuttePoint) -> bool:
    """``T(G; x', y') == L^m M^(n - kappa) T(G (x) K; x, y)``, exactly."""
    s = shift_xy(k, p)
    lhs = tutte_eval(g, s.target)
    rhs = s.L**g.m * s.M ** (g.n - components(g)) * tutte_eval(tensor_product(g, k), p)
    return lhs == rhs


def two_sum_instance(
    gw: WeightedGraph, f: int, k: DistinguishedEdgeGraph, alpha: RationalLike, alpha_prime: RationalLike
) -> tuple[WeightedGraph, WeightedGraph]:
    """``(G, w')`` with ``w'(f) = alpha'`` and ``(G_f, w)`` with the gadget edges at ``alpha``."""
    alpha, alpha_prime = Q(alpha), Q(alpha_prime)
    weights = list(gw.weights)
    weights[f] = alpha_prime
    host = WeightedGraph(gw.graph, tuple(weights))
    rest = tuple(w for i, w in enumerate(gw.weights) if i != f)
    glued = two_sum(gw.graph, f, k)
    return host, WeightedGraph(glued, rest + (alpha,) * (k.graph.m - 1))


def verify_two_sum_identity(
    gw: WeightedGraph, f: int, k: DistinguishedEdgeGraph, q: RationalLike, alpha: RationalLike
) -> bool:
    """Check that one edge of weight ``alpha'`` is simulated by ``k`` at weight ``alpha``.

    The weight of ``f`` in ``gw`` is replaced by ``alpha'``.  For ``q != 0``:
    ``Z(G; q, w') == N Z(G_f; q, w)``.  At ``q = 0`` (connected ``G``) the same
    statement for the reliability sum ``R``.
    """
    q = Q(q)
    s = shift_qalpha(k, q, alpha)
    host, glued = two_sum_instance(gw, f, k, alpha, s.alpha_prime)
    if q == 0:
        if not is_connected(gw.graph):
            raise ValueError("the q = 0 identity is stated for connected graphs")
        return reliability_frontier(host) == s.N * reliability_frontier(glued)
    return z_frontier(host, q) == s.N * z_frontier(glued, q)
