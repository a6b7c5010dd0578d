"""Approximation-complexity atlas of the rational Tutte plane.

``classify`` evaluates every known result's hypothesis at a point with exact
comparisons and reports the strongest one.  ``plan_shift`` searches sequences
of stretches and thickenings (closed forms, exact) that move a point into a
target region, and ``hardness_witness`` produces the concrete pair of shifts
that the shift-based hardness theorems ask for.
"""

from __future__ import annotations

import enum
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from tutteplane.exact.core import TuttePoint
from tutteplane.multigraph import IDENTITY_GADGET, DistinguishedEdgeGraph, compose, cycle_gadget, parallel_gadget
from tutteplane.rational import Q, RationalLike, approx, fmt
from tutteplane.shifts import ShiftUndefinedError, stretch_point, thicken_point


class Tag(enum.Enum):
    """Region tags, strongest first."""

    FP_EXACT = "FP_EXACT"
    NO_FPRAS_UNLESS_RP_SHARP_P = "NO_FPRAS_UNLESS_RP_SHARP_P"
    NO_FPRAS_UNLESS_RP_NP = "NO_FPRAS_UNLESS_RP_NP"
    EQUIV_PERFECT_MATCHINGS = "EQUIV_PERFECT_MATCHINGS"
    FPRAS_KNOWN = "FPRAS_KNOWN"
    UNKNOWN = "UNKNOWN"

    @property
    def strength(self) -> int:
        return list(Tag).index(self)


class Provenance(enum.Enum):
    DERIVED = "derived"
    CITED = "cited result"


@dataclass(frozen=True)
class Finding:
    tag: Tag
    key: str
    provenance: Provenance
    hypothesis: str


@dataclass(frozen=True)
class RegionClass:
    point: TuttePoint
    tag: Tag
    justification: Finding | None
    applicable: tuple[Finding, ...] = ()

    @property
    def citation(self) -> str:
        return self.justification.key if self.justification else "none"


SPECIAL_POINTS = frozenset({(Fraction(1), Fraction(1)), (Fraction(0), Fraction(-1)), (Fraction(-1), Fraction(0)), (Fraction(-1), Fraction(-1))})
BOUNDARY_LIMIT = Fraction(29, 100)
VICINITY_Q = Fraction(3, 2)


def _is_special(p: TuttePoint) -> bool:
    return (p.x, p.y) in SPECIAL_POINTS


Rule = Callable[[TuttePoint], "Finding | None"]


def _rule(tag: Tag, key: str, provenance: Provenance = Provenance.DERIVED):
    def wrap(test: Callable[[TuttePoint], str | None]) -> Rule:
        def rule(p: TuttePoint) -> Finding | None:
            hypothesis = test(p)
            return None if hypothesis is None else Finding(tag, key, provenance, hypothesis)

        rule.key = key  # type: ignore[attr-defined]
        return rule

    return wrap


@_rule(Tag.FP_EXACT, "special-point", Provenance.CITED)
def _special(p: TuttePoint) -> str | None:
    if _is_special(p):
        return f"({fmt(p.x)}, {fmt(p.y)}) is one of the four exactly computable special points"
    return None


@_rule(Tag.FP_EXACT, "h1-exact", Provenance.CITED)
def _h1(p: TuttePoint) -> str | None:
    if p.q == 1:
        return "q = (x-1)(y-1) = 1, so T is a product of per-component factors"
    return None


@_rule(Tag.FPRAS_KNOWN, "ising-ferro-fpras", Provenance.CITED)
def _ising_ferro(p: TuttePoint) -> str | None:
    if p.q == 2 and p.y > 1:
        return f"q = 2 and y = {fmt(p.y)} > 1 (ferromagnetic Ising)"
    return None


@_rule(Tag.NO_FPRAS_UNLESS_RP_NP, "ising-antiferro", Provenance.CITED)
def _ising_antiferro(p: TuttePoint) -> str | None:
    if p.q == 2 and 0 < p.y < 1:
        return f"q = 2 and 0 < y = {fmt(p.y)} < 1 (antiferromagnetic Ising)"
    return None


@_rule(Tag.NO_FPRAS_UNLESS_RP_NP, "chromatic-np", Provenance.CITED)
def _chromatic(p: TuttePoint) -> str | None:
    lam = 1 - p.x
    if p.y == 0 and lam.denominator == 1 and lam > 2:
        return f"y = 0 and x = 1 - {fmt(lam)}: counts proper {fmt(lam)}-colourings, whose existence is NP-complete"
    return None


@_rule(Tag.NO_FPRAS_UNLESS_RP_NP, "halfplane-x")
def _halfplane_x(p: TuttePoint) -> str | None:
    if p.x < -1 and p.q not in (0, 1):
        return f"x = {fmt(p.x)} < -1 and q = {fmt(p.q)} not in {{0, 1}}"
    return None


@_rule(Tag.NO_FPRAS_UNLESS_RP_NP, "halfplane-y")
def _halfplane_y(p: TuttePoint) -> str | None:
    if p.y < -1 and p.q not in (0, 1, 2):
        note = ""
        lam = 1 - p.y
        if p.x == 0 and lam.denominator == 1:
            note = f" (counts nowhere-zero {fmt(lam)}-flows)"
        return f"y = {fmt(p.y)} < -1 and q = {fmt(p.q)} not in {{0, 1, 2}}{note}"
    return None


@_rule(Tag.NO_FPRAS_UNLESS_RP_NP, "reliability-line")
def _reliability(p: TuttePoint) -> str | None:
    if p.x == 1 and p.y < -1:
        return f"x = 1 and y = {fmt(p.y)} < -1 (reliability with negative weights)"
    return None


@_rule(Tag.EQUIV_PERFECT_MATCHINGS, "h2-matchings")
def _h2_matchings(p: TuttePoint) -> str | None:
    if p.q == 2 and p.y < -1:
        return f"q = 2 and y = {fmt(p.y)} < -1"
    return None


def _inside(v: Fraction) -> bool:
    return -1 < v < 1


@_rule(Tag.NO_FPRAS_UNLESS_RP_NP, "triangle-y")
def _triangle_y(p: TuttePoint) -> str | None:
    if _inside(p.x) and _inside(p.y) and p.y < -1 - 2 * p.x and p.q != 1:
        return f"|x| < 1, |y| < 1, y = {fmt(p.y)} < -1 - 2x = {fmt(-1 - 2 * p.x)}, q = {fmt(p.q)} != 1"
    return None


@_rule(Tag.NO_FPRAS_UNLESS_RP_NP, "triangle-x")
def _triangle_x(p: TuttePoint) -> str | None:
    if _inside(p.x) and _inside(p.y) and p.x < -1 - 2 * p.y and p.q != 1:
        return f"|x| < 1, |y| < 1, x = {fmt(p.x)} < -1 - 2y = {fmt(-1 - 2 * p.y)}, q = {fmt(p.q)} != 1"
    return None


@_rule(Tag.NO_FPRAS_UNLESS_RP_NP, "boundary-x")
def _boundary_x(p: TuttePoint) -> str | None:
    if p.x == -1 and -1 < p.y < BOUNDARY_LIMIT and p.y != 0:
        return f"x = -1 and -1 < y = {fmt(p.y)} < 29/100, not the point (-1, 0)"
    return None


@_rule(Tag.NO_FPRAS_UNLESS_RP_NP, "boundary-y")
def _boundary_y(p: TuttePoint) -> str | None:
    if p.y == -1 and -1 < p.x < BOUNDARY_LIMIT and p.x != 0:
        return f"y = -1 and -1 < x = {fmt(p.x)} < 29/100, not the point (0, -1)"
    return None


@_rule(Tag.NO_FPRAS_UNLESS_RP_NP, "vicinity")
def _vicinity(p: TuttePoint) -> str | None:
    if abs(p.x) <= 1 and abs(p.y) <= 1 and p.q > VICINITY_Q and not _is_special(p):
        return f"|x| <= 1, |y| <= 1 and q = {fmt(p.q)} > 3/2, not a special point"
    return None


@_rule(Tag.NO_FPRAS_UNLESS_RP_SHARP_P, "q4-sharp-p")
def _q4(p: TuttePoint) -> str | None:
    if p.q == 4 and -1 < p.y < 0:
        return f"q = 4 and y = {fmt(p.y)} in (-1, 0)"
    return None


RULES: tuple[Rule, ...] = (
    _special,
    _h1,
    _q4,
    _halfplane_x,
    _halfplane_y,
    _reliability,
    _triangle_y,
    _triangle_x,
    _boundary_x,
    _boundary_y,
    _vicinity,
    _chromatic,
    _ising_antiferro,
    _h2_matchings,
    _ising_ferro,
)


def classify(p: TuttePoint, witness_depth: int = 0) -> RegionClass:
    """Strongest applicable tag at ``p`` plus every applicable result.

    With ``witness_depth > 0`` a point that no stated result covers is also
    searched for a pair of 2-stretch/2-thickening shift sequences satisfying
    the shift hardness criterion (one point outside ``[-1, 1]`` and one inside
    ``(-1, 1)`` in the same coordinate, ``q`` not in ``{0, 1, 2}``).
    """
    found = [f for f in (rule(p) for rule in RULES) if f is not None]
    if not found and witness_depth > 0:
        witness = search_witness(p, witness_depth)
        if witness is not None:
            found.append(
                Finding(
                    Tag.NO_FPRAS_UNLESS_RP_NP,
                    "shift-witness",
                    Provenance.DERIVED,
                    f"{len(witness.escape.steps)}-step plan reaches {witness.coordinate} = "
                    f"~{approx(getattr(witness.escape.end, witness.coordinate))} outside [-1, 1]; q = {fmt(p.q)}",
                )
            )
    if not found:
        return RegionClass(p, Tag.UNKNOWN, None, ())
    found.sort(key=lambda f: f.tag.strength)
    return RegionClass(p, found[0].tag, found[0], tuple(found))


# -- shift planning -----------------------------------------------------------

STRETCH = "stretch"
THICKEN = "thicken"


@dataclass(frozen=True, order=True)
class ShiftStep:
    op: str
    k: int

    def apply(self, p: TuttePoint) -> TuttePoint:
        return stretch_point(p, self.k) if self.op == STRETCH else thicken_point(p, self.k)

    def gadget(self) -> DistinguishedEdgeGraph:
        return cycle_gadget(self.k) if self.op == STRETCH else parallel_gadget(self.k)

    def __str__(self) -> str:
        return f"{self.op} {self.k}"


@dataclass(frozen=True)
class ShiftPlan:
    start: TuttePoint
    steps: tuple[ShiftStep, ...]
    end: TuttePoint
    path: tuple[TuttePoint, ...] = field(default=(), compare=False)

    def replay(self) -> TuttePoint:
        p = self.start
        for step in self.steps:
            p = step.apply(p)
        return p

    def gadget(self) -> DistinguishedEdgeGraph:
        """A single gadget implementing the whole plan (identity for an empty plan)."""
        g = IDENTITY_GADGET
        for step in self.steps:
            g = compose(g, step.gadget())
        return g


class PlanNotFound(LookupError):
    """No plan within the depth or state budget reaches the target."""


Predicate = Callable[[TuttePoint], bool]

TARGETS: dict[str, tuple[str, Predicate]] = {
    "x-escape": ("x outside [-1, 1]", lambda p: not -1 <= p.x <= 1),
    "y-escape": ("y outside [-1, 1]", lambda p: not -1 <= p.y <= 1),
    "x-inside": ("x in (-1, 1)", lambda p: -1 < p.x < 1),
    "y-inside": ("y in (-1, 1)", lambda p: -1 < p.y < 1),
    "far-left": ("x < -100 and 0 < y < 1", lambda p: p.x < -100 and 0 < p.y < 1),
    "upper-half": ("y > 1", lambda p: p.y > 1),
}


def plan_shift(
    p: TuttePoint,
    target: Predicate | str,
    max_depth: int = 20,
    ks: Sequence[int] = (2,),
    ops: Sequence[str] = (STRETCH, THICKEN),
    max_states: int = 200_000,
) -> ShiftPlan:
    """Shortest (then lexicographically least) stretch/thicken plan into ``target``.

    Breadth-first over exact closed-form shifts, deduplicating exact points;
    undefined shifts are pruned.  Raises :class:`PlanNotFound` once the depth
    or the state budget is exhausted.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    if isinstance(target, str):
        try:
            target = TARGETS[target][1]
        except KeyError:
            raise ValueError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}") from None
    moves = sorted(ShiftStep(op, k) for op in ops for k in ks)
    if target(p):
        return ShiftPlan(p, (), p, (p,))
    seen = {(p.x, p.y)}
    frontier: list[tuple[TuttePoint, tuple[ShiftStep, ...], tuple[TuttePoint, ...]]] = [(p, (), (p,))]
    for _ in range(max_depth):
        nxt = []
        for point, steps, path in frontier:
            for move in moves:
                try:
                    new = move.apply(point)
                except ShiftUndefinedError:
                    continue
                key = (new.x, new.y)
                if key in seen:
                    continue
                seen.add(key)
                plan_steps = steps + (move,)
                if target(new):
                    return ShiftPlan(p, plan_steps, new, path + (new,))
                nxt.append((new, plan_steps, path + (new,)))
                if len(seen) > max_states:
                    raise PlanNotFound(f"state budget of {max_states} exhausted")
        frontier = nxt
        if not frontier:
            break
    raise PlanNotFound(f"no plan within depth {max_depth}")


# -- hardness witnesses -------------------------------------------------------

@dataclass(frozen=True)
class HardnessWitness:
    """Two shifts of ``point``: ``escape`` ends outside ``[-1, 1]`` in ``coordinate``,
    ``inside`` ends in ``(-1, 1)`` in the same coordinate."""

    point: TuttePoint
    coordinate: str
    escape: ShiftPlan
    inside: ShiftPlan
    rule: str

    def check(self) -> bool:
        c = self.coordinate
        out = getattr(self.escape.replay(), c)
        inn = getattr(self.inside.replay(), c)
        return self.point.q not in (0, 1, 2) and not -1 <= out <= 1 and -1 < inn < 1


class NoWitness(ValueError):
    """The point is outside every region with a shift-based hardness argument."""


def _plan(p: TuttePoint, steps: Iterable[ShiftStep]) -> ShiftPlan:
    steps = tuple(steps)
    path = [p]
    for step in steps:
        path.append(step.apply(path[-1]))
    return ShiftPlan(p, steps, path[-1], tuple(path))


def _prepend(p: TuttePoint, first: Sequence[ShiftStep], plan: ShiftPlan) -> ShiftPlan:
    return _plan(p, tuple(first) + plan.steps)


def _large_k(p: TuttePoint, op: str, parity: int, coordinate: str, k_limit: int) -> ShiftPlan:
    """Smallest k of the given parity whose stretch/thickening lands in ``(-1, 1)``."""
    for k in range(2 if parity == 0 else 1, k_limit + 1, 2):
        try:
            end = ShiftStep(op, k).apply(p)
        except ShiftUndefinedError:
            continue
        if -1 < getattr(end, coordinate) < 1:
            return _plan(p, [ShiftStep(op, k)])
    raise NoWitness(f"no {op} with k <= {k_limit} of the required parity brings {coordinate} into (-1, 1)")


def _half_plane_witness(p: TuttePoint, coordinate: str, k_limit: int) -> HardnessWitness:
    # coordinate 'y': the x < -1 half-plane with stretches; 'x': the y < -1 half-plane with thickenings.
    op, other = (STRETCH, "x") if coordinate == "y" else (THICKEN, "y")
    rule = "halfplane-x" if coordinate == "y" else "halfplane-y"
    v = getattr(p, coordinate)
    identity = _plan(p, ())
    if v > 1:
        return HardnessWitness(p, coordinate, identity, _large_k(p, op, 0, coordinate, k_limit), rule)
    if v < -1:
        return HardnessWitness(p, coordinate, identity, _large_k(p, op, 1, coordinate, k_limit), rule)
    if -1 < v < 1:
        return HardnessWitness(p, coordinate, _plan(p, [ShiftStep(op, 2)]), identity, rule)
    # v == -1: a 3-fold step first moves into the open strip, keeping the other coordinate below -1
    three = _plan(p, [ShiftStep(op, 3)])
    assert getattr(three.end, other) < -1 and -1 < getattr(three.end, coordinate) < 1
    return HardnessWitness(p, coordinate, _plan(p, [ShiftStep(op, 3), ShiftStep(op, 2)]), three, rule)


def hardness_witness(p: TuttePoint, k_limit: int = 64) -> HardnessWitness:
    """Concrete shifts showing that the shift hardness criterion applies at ``p``.

    Follows the case analyses of the half-plane, triangle, boundary and
    vicinity results.  Raises :class:`NoWitness` elsewhere, including on the
    hyperbolas ``q in {0, 1, 2}`` whose hardness (if any) has other arguments.
    """
    q = p.q
    if q in (0, 1, 2):
        raise NoWitness(f"q = {fmt(q)}: shift-based hardness needs q not in {{0, 1, 2}}")
    if _is_special(p):
        raise NoWitness("special points are exactly computable")
    x, y = p.x, p.y
    witness: HardnessWitness | None = None
    if x < -1:
        witness = _half_plane_witness(p, "y", k_limit)
    elif y < -1:
        witness = _half_plane_witness(p, "x", k_limit)
    elif _triangle_y(p):
        witness = HardnessWitness(p, "y", _plan(p, [ShiftStep(STRETCH, 2)]), _plan(p, ()), "triangle-y")
    elif _triangle_x(p):
        witness = HardnessWitness(p, "x", _plan(p, [ShiftStep(THICKEN, 2)]), _plan(p, ()), "triangle-x")
    elif _boundary_x(p) or _boundary_y(p):
        op = THICKEN if x == -1 else STRETCH
        first = [ShiftStep(op, 2)]
        inner = hardness_witness(first[0].apply(p), k_limit)
        witness = HardnessWitness(
            p,
            inner.coordinate,
            _prepend(p, first, inner.escape),
            _prepend(p, first, inner.inside),
            "boundary-x" if x == -1 else "boundary-y",
        )
    elif _vicinity(p):
        if q > 2:
            witness = HardnessWitness(p, "x", _plan(p, [ShiftStep(THICKEN, 2)]), _plan(p, ()), "vicinity")
        else:
            # 3/2 < q < 2: thicken until y^k < (2 - q)/2 (k even), then a 2-stretch pushes y below -1
            k = next((k for k in range(2, k_limit + 1, 2) if y**k < (2 - q) / 2), None)
            if k is None:
                raise NoWitness(f"no even k <= {k_limit} with y^k < (2-q)/2")
            escape = _plan(p, [ShiftStep(THICKEN, k), ShiftStep(STRETCH, 2)])
            witness = HardnessWitness(p, "y", escape, _plan(p, ()), "vicinity")
    if witness is None:
        raise NoWitness(f"{p} is not in a region with a shift-based hardness argument")
    if not witness.check():
        raise AssertionError(f"internal error: witness for {p} fails its own check")
    return witness


def search_witness(p: TuttePoint, max_depth: int, ks: Sequence[int] = (2,)) -> HardnessWitness | None:
    """Breadth-first search for a witness made of ``ks``-stretches and thickenings."""
    if p.q in (0, 1, 2) or _is_special(p):
        return None
    for coordinate in ("y", "x"):
        escape_name, inside_name = f"{coordinate}-escape", f"{coordinate}-inside"
        try:
            inside = plan_shift(p, inside_name, max_depth, ks)
            escape = plan_shift(p, escape_name, max_depth, ks)
        except PlanNotFound:
            continue
        return HardnessWitness(p, coordinate, escape, inside, "shift-witness")
    return None


# -- grids --------------------------------------------------------------------

def frange(lo: Fraction, hi: Fraction, step: Fraction) -> list[Fraction]:
    if step <= 0:
        raise ValueError("step must be positive")
    if hi < lo:
        raise ValueError("empty range")
    count = int((hi - lo) / step)
    return [lo + i * step for i in range(count + 1)]


def atlas_grid(
    x_range: tuple[RationalLike, RationalLike] = (-8, 8),
    y_range: tuple[RationalLike, RationalLike] = (-8, 8),
    step: RationalLike = Fraction(1, 4),
) -> list[RegionClass]:
    """Classification of every grid point, rows of increasing ``y`` then ``x``."""
    xs = frange(Q(x_range[0]), Q(x_range[1]), Q(step))
    ys = frange(Q(y_range[0]), Q(y_range[1]), Q(step))
    return [classify(TuttePoint(x, y)) for y in ys for x in xs]
