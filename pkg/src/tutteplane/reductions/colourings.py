"""Counting proper 3-colourings of a bipartite graph from signs of ``P(.; 4, y)``, ``-1 < y < 0``.

A generalized theta graph ``H_M`` is tuned so that the ratio of its two
conditioned Potts values sits just above ``-1/M``.  Glued to a thickened copy
of the graph with two apex vertices, the sign of the total tells on which side
of ``3 P(G;2,0) / P(G;3,0)`` the number ``1/M`` lies; a bisection pins that
ratio down and the exactly known ``P(G;2,0)`` then gives ``P(G;3,0)``.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor
from typing import Callable

from tutteplane.exact.potts import potts_conditioned, proper_colourings
from tutteplane.multigraph import Multigraph
from tutteplane.rational import Q, RationalLike
from tutteplane.reductions.threeway import HypothesisError

log = logging.getLogger(__name__)

Q_STATES = 4


def path_block_values(length: int, y: RationalLike) -> tuple[Fraction, Fraction]:
    """``(f, a)``: conditioned 4-state Potts values of a path with equal / different end colours."""
    if length < 1:
        raise ValueError("path length must be at least 1")
    y = Q(y)
    f = ((3 + y) ** length + 3 * (y - 1) ** length) / 4
    a = ((3 + y) ** length - (y - 1) ** length) / 4
    return f, a


def path_block_recurrence(length: int, y: RationalLike) -> tuple[Fraction, Fraction]:
    """Same values from ``f_l = y f_(l-1) + 3 a_(l-1)``, ``a_l = f_(l-1) + (2+y) a_(l-1)``."""
    if length < 1:
        raise ValueError("path length must be at least 1")
    y = Q(y)
    f, a = y, Fraction(1)
    for _ in range(length - 1):
        f, a = y * f + 3 * a, f + (2 + y) * a
    return f, a


def theta_conditioned(lengths: dict[int, int], y: RationalLike) -> tuple[Fraction, Fraction]:
    """Conditioned values ``(same, different)`` of parallel ``a``-``b`` paths, ``{length: count}``."""
    same = different = Fraction(1)
    for length, count in lengths.items():
        f, a = path_block_values(length, y)
        same *= f**count
        different *= a**count
    return same, different


def theta_graph(lengths: dict[int, int]) -> Multigraph:
    """Vertex 1 is ``a``, vertex 2 is ``b``; internal path vertices follow."""
    edges: list[tuple[int, int]] = []
    n = 2
    for length, count in sorted(lengths.items()):
        for _ in range(count):
            chain = [1] + list(range(n + 1, n + length)) + [2]
            n += length - 1
            edges += list(zip(chain, chain[1:]))
    return Multigraph(n, tuple(edges))


# -- the tuned theta gadget ------------------------------------------------------

def _delta(j: int, y: Fraction) -> Fraction:
    f, a = path_block_values(2 * j, y)
    return 1 - a / f


@dataclass(frozen=True)
class HMGadget:
    y: Fraction
    M: Fraction
    n: int
    k: int
    t: int
    ks: tuple[int, ...]
    epsilon: Fraction
    deltas: tuple[Fraction, ...]
    gamma: Fraction
    same: Fraction
    different: Fraction

    @property
    def lengths(self) -> dict[int, int]:
        out = {1: self.k}
        for j, kj in enumerate(self.ks, start=1):
            if kj:
                out[2 * j] = kj
        return out

    @property
    def ratio(self) -> Fraction:
        return self.same / self.different

    @property
    def graph(self) -> Multigraph:
        return theta_graph(self.lengths)

    a: int = field(default=1, init=False)
    b: int = field(default=2, init=False)


def _check_y(y: Fraction) -> None:
    if not -1 < y < 0:
        raise HypothesisError(f"y = {y} must lie in (-1, 0)")


def build_HM(M: RationalLike, n: int, y: RationalLike) -> HMGadget:
    """Theta gadget whose conditioned ratio lies in ``[-1/M, -1/M + 2^(-n^2)]``."""
    M, y = Q(M), Q(y)
    _check_y(y)
    if n < 1:
        raise HypothesisError("n must be positive")
    if not 1 <= M <= 3**n:
        raise HypothesisError(f"M = {M} must lie in [1, 3^n]")
    eps = Fraction(1, 2 ** (n * n))
    target = 1 / M
    ay = abs(y)
    k = 1
    while ay**k > target:
        k += 2
    deltas = []
    j = 0
    while True:
        j += 1
        deltas.append(_delta(j, y))
        if deltas[-1] <= eps * M:
            break
    t = j
    cur = ay**k
    ks = []
    for d in deltas:
        factor = 1 / (1 - d)
        kj = 0
        while cur * factor <= target:
            cur *= factor
            kj += 1
        ks.append(kj)
    gamma = ((3 + y) / (y - 1)) ** 2
    lengths = {1: k}
    for jj, kj in enumerate(ks, start=1):
        if kj:
            lengths[2 * jj] = kj
    same, different = theta_conditioned(lengths, y)
    hm = HMGadget(y, M, n, k, t, tuple(ks), eps, tuple(deltas), gamma, same, different)
    problems = check_HM(hm)
    if problems:
        raise ArithmeticError("; ".join(problems))
    return hm


def check_HM(hm: HMGadget) -> list[str]:
    """Every stated property of the gadget, checked exactly; returns the failures."""
    y, M, eps = hm.y, hm.M, hm.epsilon
    ay = abs(y)
    out = []
    if hm.k % 2 != 1:
        out.append("k is even")
    if not (ay**hm.k <= 1 / M and (hm.k < 3 or 1 / M < ay ** (hm.k - 2))):
        out.append("odd exponent k out of range")
    if not hm.gamma > 1:
        out.append("gamma <= 1")
    prod = ay**hm.k
    for j, (d, kj) in enumerate(zip(hm.deltas, hm.ks), start=1):
        if d != _delta(j, y):
            out.append(f"delta_{j} mismatch")
        if not (hm.gamma ** -j < d < 4 * hm.gamma ** -j):
            out.append(f"delta_{j} outside (gamma^-j, 4 gamma^-j)")
        prod /= (1 - d) ** kj
        if not (prod <= 1 / M < prod / (1 - d)):
            out.append(f"k_{j} does not bracket 1/M")
    if hm.deltas[-1] > eps * M or (hm.t > 1 and hm.deltas[-2] <= eps * M):
        out.append("t is not the first index with delta_t <= eps M")
    if hm.ratio != -prod:
        out.append("ratio differs from -|y|^k prod (1-delta)^-k_j")
    if not -1 / M <= hm.ratio <= -1 / M + eps:
        out.append("ratio outside [-1/M, -1/M + eps]")
    if not hm.different > 0:
        out.append("different-colour value is not positive")
    return out


def k_bound_holds(hm: HMGadget) -> bool:
    """``k_j <= 2 delta_(j-1) / delta_j`` wherever ``delta_j <= 0.7``."""
    for j in range(2, hm.t + 1):
        d_prev, d = hm.deltas[j - 2], hm.deltas[j - 1]
        if d <= Fraction(7, 10) and hm.ks[j - 1] > 2 * d_prev / d:
            return False
    return True


# -- the glued instance -------------------------------------------------------------

def check_instance(g: Multigraph) -> None:
    if not g.is_simple():
        raise HypothesisError("the colouring instance must be simple")
    if g.n < 4:
        raise HypothesisError("the colouring instance needs at least 4 vertices")
    if proper_colourings(g, 2) == 0:
        raise HypothesisError("the colouring instance must be bipartite")


def thickening_exponent(n: int, y: RationalLike) -> int:
    """Smallest even ``r`` with ``|y|^r < 2^(-n^2) 4^(-n)``."""
    y = Q(y)
    bound = Fraction(1, 2 ** (n * n) * 4**n)
    r = 2
    while abs(y) ** r >= bound:
        r += 2
    return r


def build_g_prime(g: Multigraph, r: int) -> Multigraph:
    """``r``-thicken every edge and join new vertices ``a = n+1``, ``b = n+2`` to all by ``r`` edges."""
    a, b = g.n + 1, g.n + 2
    edges = [e for e in g.edges for _ in range(r)]
    for v in range(1, g.n + 1):
        edges += [(a, v)] * r + [(b, v)] * r
    return Multigraph(g.n + 2, tuple(edges))


@dataclass(frozen=True)
class GMInstance:
    """``G'`` and ``H_M`` glued at ``a`` and ``b``, with the parts kept for structured evaluation."""

    g_prime: Multigraph
    hm: HMGadget
    y: Fraction

    @property
    def a(self) -> int:
        return self.g_prime.n - 1

    @property
    def b(self) -> int:
        return self.g_prime.n

    @property
    def graph(self) -> Multigraph:
        h = self.hm.graph
        base = self.g_prime.n

        def relabel(v: int) -> int:
            if v == 1:
                return self.a
            if v == 2:
                return self.b
            return base + v - 2

        extra = tuple((relabel(u), relabel(v)) for u, v in h.edges)
        return Multigraph(base + h.n - 2, self.g_prime.edges + extra)


def build_GM(g: Multigraph, hm: HMGadget, y: RationalLike) -> GMInstance:
    y = Q(y)
    if y != hm.y:
        raise ValueError("gadget was built for a different y")
    check_instance(g)
    return GMInstance(build_g_prime(g, thickening_exponent(g.n, y)), hm, y)


@lru_cache(maxsize=64)
def _g_prime_conditioned(g_prime: Multigraph, y: Fraction) -> tuple[Fraction, Fraction]:
    a, b = g_prime.n - 1, g_prime.n
    same = potts_conditioned(g_prime, Q_STATES, y, a, b, (1, 1))
    different = potts_conditioned(g_prime, Q_STATES, y, a, b, (1, 2))
    return same, different


def g_prime_conditioned(inst: GMInstance) -> tuple[Fraction, Fraction]:
    return _g_prime_conditioned(inst.g_prime, inst.y)


def exact_oracle(inst: GMInstance) -> Fraction:
    """``P(G_M; 4, y)`` exactly, by conditioning on the colours of ``a`` and ``b``."""
    g11, g12 = g_prime_conditioned(inst)
    return 4 * inst.hm.same * g11 + 12 * inst.hm.different * g12


def noisy_oracle(relative_error: float, seed: int = 0) -> Callable[[GMInstance], Fraction]:
    """Exact value times a seeded random factor in ``[1 - e, 1 + e]`` (for demonstration)."""
    rng = random.Random(seed)

    def oracle(inst: GMInstance) -> Fraction:
        return exact_oracle(inst) * (1 + Fraction(rng.uniform(-relative_error, relative_error)))

    return oracle


def interval_bounds_hold(g: Multigraph, y: RationalLike) -> bool:
    """``P(G;3,0) <= P(G'|11) <= P(G;3,0) + eps`` and the same for ``P(G;2,0)`` and ``P(G'|12)``."""
    y = Q(y)
    g_prime = build_g_prime(g, thickening_exponent(g.n, y))
    g11, g12 = _g_prime_conditioned(g_prime, y)
    eps = Fraction(1, 2 ** (g.n * g.n))
    p3, p2 = proper_colourings(g, 3), proper_colourings(g, 2)
    return p3 <= g11 <= p3 + eps and p2 <= g12 <= p2 + eps


# -- the bisection -------------------------------------------------------------

@dataclass(frozen=True)
class ColouringSearch:
    count: int
    p2: int
    z_low: Fraction
    z_high: Fraction
    bisections: int
    window: tuple[Fraction, Fraction]
    general_candidates: int


def three_colouring_search(
    g: Multigraph, y: RationalLike, oracle: Callable[[GMInstance], RationalLike] = exact_oracle
) -> ColouringSearch:
    """Bisect on the sign of ``P(G_M; 4, y)`` and read off ``P(G; 3, 0)``.

    The final window for ``3 P(G;2,0) / P(G;3,0)`` is widened by the error
    terms using only ``P(G;3,0) >= P(G;2,0)``.  The count is the unique
    ``n2`` in ``1..3^n`` with ``3 P(G;2,0) / n2`` in the window.
    ``general_candidates`` counts the distinct values ``3 n1 / n2``
    (``n1 <= 2^n``, ``n2 <= 3^n``) in the window, for diagnostics.
    """
    y = Q(y)
    _check_y(y)
    check_instance(g)
    n = g.n
    eps = Fraction(1, 2 ** (n * n))
    g_prime = build_g_prime(g, thickening_exponent(n, y))

    def sign_at(z: Fraction) -> int:
        value = Q(oracle(GMInstance(g_prime, build_HM(1 / z, n, y), y)))
        return (value > 0) - (value < 0)

    z_low, z_high = Fraction(1, 3**n), Fraction(1)
    if sign_at(z_low) <= 0 or sign_at(z_high) >= 0:
        raise ArithmeticError("the sign test does not bracket a root on [3^-n, 1]")
    steps = 0
    while z_high - z_low > eps:
        if steps == n * n:
            raise ArithmeticError("bisection did not converge within n^2 steps")
        mid = (z_low + z_high) / 2
        if sign_at(mid) >= 0:
            z_low = mid
        else:
            z_high = mid
        steps += 1
    log.debug("bisection finished after %d steps: [%s, %s]", steps, z_low, z_high)

    p2 = proper_colourings(g, 2)
    xi = 5 * eps * 3**n
    slack = xi / (4 * p2)
    lo, hi = z_high - eps - slack, z_high + slack
    numer = 3 * p2
    n2_min = max(1, ceil(numer / hi))
    n2_max = min(3**n, floor(numer / lo)) if lo > 0 else 3**n
    found = [c for c in range(n2_min, n2_max + 1) if lo <= Fraction(numer, c) <= hi]
    if len(found) != 1:
        raise ArithmeticError(f"window [{float(lo)}, {float(hi)}] holds {len(found)} candidates")
    general = _general_candidates(n, lo, hi)
    return ColouringSearch(found[0], p2, z_low, z_high, steps, (lo, hi), general)


def _general_candidates(n: int, lo: Fraction, hi: Fraction) -> int:
    values = set()
    for n1 in range(1, 2**n + 1):
        for n2 in range(max(1, ceil(3 * n1 / hi)), min(3**n, floor(3 * n1 / lo)) + 1):
            v = Fraction(3 * n1, n2)
            if lo <= v <= hi:
                values.add(v)
    return len(values)


def recover_three_colourings(
    g: Multigraph, y: RationalLike, oracle: Callable[[GMInstance], RationalLike] = exact_oracle
) -> int:
    """Number of proper 3-colourings of the bipartite graph ``g``."""
    return three_colouring_search(g, y, oracle).count
