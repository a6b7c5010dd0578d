"""Potts partition functions by colouring enumeration."""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

from tutteplane.exact.core import CAPS, EnumerationCapError, TuttePoint
from tutteplane.exact.delcon import tutte_delcon
from tutteplane.exact.subsets import tutte_bruteforce
from tutteplane.multigraph import Multigraph, components
from tutteplane.rational import Q, RationalLike, pow0


def _check_colouring_cap(n: int, cap: int | None) -> None:
    limit = CAPS.colouring_vertices if cap is None else cap
    if n > limit:
        raise EnumerationCapError(f"{n} free vertices exceeds the colouring-enumeration cap of {limit}")


def _mono_histogram(g: Multigraph, q: int, fixed: dict[int, int]) -> Counter:
    """Histogram ``mono -> number of colourings`` over colourings extending ``fixed``."""
    free = [v for v in range(1, g.n + 1) if v not in fixed]
    pairs = Counter((min(u, v), max(u, v)) for u, v in g.edges)
    hist: Counter = Counter()
    colour = dict(fixed)
    for choice in itertools.product(range(1, q + 1), repeat=len(free)):
        colour.update(zip(free, choice))
        hist[sum(c for (u, v), c in pairs.items() if colour[u] == colour[v])] += 1
    return hist


def potts(g: Multigraph, q: int, y: RationalLike, cap: int | None = None) -> Fraction:
    """``P(G; q, y)``: sum over q-colourings of ``y**(monochromatic edges)``.

    Loops are always monochromatic; ``0**0 = 1`` so ``y = 0`` counts proper colourings.
    """
    if q < 1:
        raise ValueError("q must be a positive integer")
    _check_colouring_cap(g.n, cap)
    y = Q(y)
    return sum((count * pow0(y, mono) for mono, count in _mono_histogram(g, q, {}).items()), Fraction(0))


def potts_conditioned(
    g: Multigraph,
    q: int,
    y: RationalLike,
    a: int,
    b: int,
    colours: tuple[int, int],
    cap: int | None = None,
) -> Fraction:
    """Contribution to ``P(G; q, y)`` of colourings with ``sigma(a), sigma(b) = colours``."""
    ca, cb = colours
    if not (1 <= ca <= q and 1 <= cb <= q):
        raise ValueError("colours must lie in 1..q")
    if a == b and ca != cb:
        raise ValueError("a single vertex cannot take two different colours")
    _check_colouring_cap(g.n - len({a, b}), cap)
    y = Q(y)
    fixed = {a: ca, b: cb}
    return sum((count * pow0(y, mono) for mono, count in _mono_histogram(g, q, fixed).items()), Fraction(0))


def proper_colourings(g: Multigraph, q: int, cap: int | None = None) -> int:
    """Number of proper q-colourings, ``P(G; q, 0)``."""
    return int(potts(g, q, 0, cap))


def potts_tutte_check(g: Multigraph, q: int, y: RationalLike) -> bool:
    """Check ``T(G; x, y) = (y-1)^-n (x-1)^-kappa P(G; q, y)`` with ``x = q/(y-1) + 1``."""
    y = Q(y)
    if y == 1:
        raise ValueError("y = 1 is not allowed")
    p = TuttePoint(Fraction(q) / (y - 1) + 1, y)
    lhs = tutte_bruteforce(g, p)
    rhs = potts(g, q, y) / ((y - 1) ** g.n * (p.x - 1) ** components(g))
    return lhs == rhs


def chromatic_value(g: Multigraph, lam: int) -> int:
    """Chromatic polynomial at ``lam`` by deletion-contraction on the Tutte polynomial.

    ``P(G; lam) = (-1)^(n - kappa) lam^kappa T(G; 1 - lam, 0)``.
    """
    kappa = components(g)
    t = tutte_delcon(g, TuttePoint(1 - lam, 0))
    value = (-1) ** (g.n - kappa) * Fraction(lam) ** kappa * t
    if value.denominator != 1:
        raise ArithmeticError("chromatic value is not an integer")
    return int(value)
