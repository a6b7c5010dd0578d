"""Seeded verification suites over the exact identities, the reductions and the atlas.

Every check enumerates small cases first and then adds seeded random ones, and
counts how many exact equalities (or stated bounds) held.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from tutteplane.atlas import ShiftPlan, Tag, classify, hardness_witness, plan_shift
from tutteplane.exact import (
    TuttePoint,
    WeightedGraph,
    count_perfect_matchings,
    potts,
    proper_colourings,
    t_from_z,
    tutte_bruteforce,
    tutte_delcon,
    tutte_eval,
    z_bruteforce,
    z_constant,
    z_frontier,
)
from tutteplane.generators import all_multigraphs, random_connected_simple, random_multigraph, random_weights
from tutteplane.multigraph import (
    DistinguishedEdgeGraph,
    Multigraph,
    complete_bipartite,
    complete_graph,
    components,
    compose,
    cycle_gadget,
    cycle_graph,
    is_bridge,
    is_connected,
    parallel_gadget,
    path_graph,
    star_graph,
)
from tutteplane.reductions.colourings import build_HM, check_HM, interval_bounds_hold, recover_three_colourings
from tutteplane.reductions.matchings import check_matching_observations, fisher_ising_via_matchings, run_matchings
from tutteplane.reductions.threedm import ThreeDMInstance, check_observations, count_3dm, run_3dm
from tutteplane.reductions.threeway import (
    PATTERNS,
    ThreeWayCutInstance,
    bedrock_params,
    build_3waycut_gadget,
    check_q0_identity,
    error_bounds,
    min_3way_cuts,
    partition_sums,
    q0_stretch_params,
    recover_cut_count,
)
from tutteplane.shifts import (
    ShiftUndefinedError,
    shift_qalpha,
    shift_xy,
    stretch_alpha,
    stretch_point,
    thicken_alpha,
    thicken_point,
    verify_tensor_identity,
    verify_two_sum_identity,
)

SUITES = ("identities", "reductions", "atlas")

POINTS = tuple(
    TuttePoint(Fraction(x), Fraction(y))
    for x, y in (("-2", "3"), ("1/2", "-3"), ("3", "1/3"), ("-1/2", "-5/2"), ("2", "-7/3"))
)


@dataclass
class CheckResult:
    name: str
    passed: int = 0
    total: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def record(self, ok: bool, detail: str = "") -> None:
        self.total += 1
        if ok:
            self.passed += 1
        elif len(self.failures) < 5:
            self.failures.append(detail)


Check = Callable[[random.Random, int], CheckResult]


def _graphs(rng: random.Random, max_edges: int, extra: int, extra_edges: int | None = None) -> Iterator[Multigraph]:
    yield from all_multigraphs(max_edges)
    for _ in range(extra):
        yield random_multigraph(rng, extra_edges or max_edges + 2)


def random_gadget(rng: random.Random, size: int = 5) -> DistinguishedEdgeGraph:
    """A random multigraph gadget whose distinguished edge is neither a loop nor a bridge."""
    while True:
        g = random_multigraph(rng, size, max_vertices=4, loops=False)
        if g.m == 0 or not is_connected(g):
            continue
        candidates = [e for e in range(g.m) if not g.is_loop(e) and not is_bridge(g, e)]
        if candidates:
            return DistinguishedEdgeGraph(g, rng.choice(candidates))


# -- identities -----------------------------------------------------------------

def check_evaluators(rng: random.Random, max_edges: int) -> CheckResult:
    res = CheckResult("evaluator-equivalence")
    for g in _graphs(rng, max_edges, 50):
        for p in POINTS:
            brute = tutte_bruteforce(g, p)
            res.record(tutte_delcon(g, p) == brute == tutte_eval(g, p), f"{g} at {p}")
    return res


def check_conversion(rng: random.Random, max_edges: int) -> CheckResult:
    res = CheckResult("tutte-random-cluster-conversion")
    for g in _graphs(rng, max_edges, 50):
        for p in POINTS:
            z = z_bruteforce(WeightedGraph.constant(g, p.y - 1), p.q)
            res.record(t_from_z(z, p, g.n, components(g)) == tutte_bruteforce(g, p), f"{g} at {p}")
    return res


def check_h1_product(rng: random.Random, max_edges: int) -> CheckResult:
    res = CheckResult("q1-product")
    for _ in range(100):
        g = random_multigraph(rng, max_edges + 2)
        w = random_weights(rng, g.m)
        expected = Fraction(1)
        for x in w:
            expected *= 1 + x
        res.record(z_frontier(WeightedGraph(g, w), 1) == expected, str(g))
    return res


def check_potts(rng: random.Random, max_edges: int) -> CheckResult:
    res = CheckResult("potts-tutte")
    for _ in range(40):
        g = random_multigraph(rng, max_edges, max_vertices=5)
        q = rng.choice((2, 3, 4))
        y = rng.choice((Fraction(-1, 2), Fraction(3), Fraction(-2), Fraction(1, 3)))
        res.record(potts(g, q, y) == z_constant(g, q, y - 1), f"{g} q={q} y={y}")
    return res


def _gadget_library(rng: random.Random) -> list[DistinguishedEdgeGraph]:
    return [cycle_gadget(2), cycle_gadget(3), cycle_gadget(4), parallel_gadget(2), parallel_gadget(3), random_gadget(rng)]


def check_tensor(rng: random.Random, max_edges: int) -> CheckResult:
    res = CheckResult("tensor-identity")
    gadgets = _gadget_library(rng)
    cases = 0
    while cases < 200:
        g = random_multigraph(rng, min(max_edges, 5), max_vertices=4)
        k = rng.choice(gadgets)
        p = rng.choice(POINTS)
        try:
            ok = verify_tensor_identity(g, k, p)
        except ShiftUndefinedError:
            continue
        cases += 1
        res.record(ok, f"{g} with {k} at {p}")
    return res


def check_two_sum(rng: random.Random, max_edges: int) -> CheckResult:
    res = CheckResult("two-sum-identity")
    gadgets = _gadget_library(rng)
    cases = 0
    while cases < 200:
        q = rng.choice((Fraction(0), Fraction(2), Fraction(3), Fraction(4), Fraction(-1), Fraction(5, 2)))
        g = random_multigraph(rng, min(max_edges, 6), max_vertices=4)
        if g.m == 0 or (q == 0 and not is_connected(g)):
            continue
        w = list(random_weights(rng, g.m))
        k = rng.choice(gadgets)
        if q == 0 and not is_connected(k.graph):
            continue
        f = rng.randrange(g.m)
        alpha = rng.choice((Fraction(-1, 2), Fraction(2), Fraction(-3), Fraction(1, 3)))
        try:
            ok = verify_two_sum_identity(WeightedGraph(g, tuple(w)), f, k, q, alpha)
        except ShiftUndefinedError:
            continue
        cases += 1
        res.record(ok, f"{g} f={f} q={q} alpha={alpha}")
    return res


def check_closed_forms(rng: random.Random, max_edges: int) -> CheckResult:
    res = CheckResult("stretch-thicken-closed-forms")
    for k in range(1, 9):
        for p in POINTS:
            for gadget, closed in ((cycle_gadget(k), stretch_point), (parallel_gadget(k), thicken_point)):
                try:
                    expected = closed(p, k)
                except ShiftUndefinedError:
                    continue
                res.record(shift_xy(gadget, p).target == expected, f"k={k} at {p}")
            q, alpha = p.q, p.y - 1
            res.record(shift_qalpha(parallel_gadget(k), q, alpha).alpha_prime == thicken_alpha(alpha, k), f"k={k}")
            try:
                expected = stretch_alpha(q, alpha, k)
                res.record(shift_qalpha(cycle_gadget(k), q, alpha).alpha_prime == expected, f"k={k}")
            except ShiftUndefinedError:
                pass
        for alpha in (Fraction(-3), Fraction(1, 2), Fraction(-1, 3)):
            res.record(shift_qalpha(cycle_gadget(k), 0, alpha).alpha_prime == alpha / k, f"q=0 k={k}")
    return res


def check_transitivity(rng: random.Random, max_edges: int) -> CheckResult:
    res = CheckResult("shift-transitivity")
    gadgets = [cycle_gadget(2), cycle_gadget(3), parallel_gadget(2), parallel_gadget(3)]
    cases = 0
    while cases < 50:
        k1 = rng.choice(gadgets + [random_gadget(rng, 4)])
        k2 = rng.choice(gadgets + [random_gadget(rng, 4)])
        p = rng.choice(POINTS)
        try:
            mid = shift_xy(k1, p).target
            chained = shift_xy(k2, mid).target
            direct = shift_xy(compose(k1, k2), p).target
        except ShiftUndefinedError:
            continue
        cases += 1
        res.record(chained == direct, f"{k1} then {k2} at {p}")
    return res


# -- reductions -------------------------------------------------------------------

def check_three_way(rng: random.Random, max_edges: int) -> CheckResult:
    res = CheckResult("three-way-cut-recovery")
    instances = [
        ThreeWayCutInstance(star_graph(3), (2, 3, 4)),
        ThreeWayCutInstance(complete_graph(3), (1, 2, 3)),
        ThreeWayCutInstance(complete_graph(4), (1, 2, 3)),
        ThreeWayCutInstance(cycle_graph(6), (1, 3, 5)),
        ThreeWayCutInstance(complete_bipartite(2, 3), (1, 3, 4)),
    ]
    while len(instances) < 8:
        g = random_connected_simple(rng, rng.randint(4, 6), rng.randint(0, 2))
        if g.m <= 8:
            instances.append(ThreeWayCutInstance(g, tuple(rng.sample(range(1, g.n + 1), 3))))
    for inst in instances:
        g = inst.graph
        for q in (3, 4, -1):
            p = bedrock_params(g.m, g.n, q, 1, Fraction(-1, 2))
            z = z_frontier(build_3waycut_gadget(inst, p.beta1, p.beta2), q)
            rec = recover_cut_count(z, p, g.m)
            res.record((rec.c, rec.N) == min_3way_cuts(inst) and rec.residual <= Fraction(1, 4), f"{g} q={q}")
            sums = partition_sums(inst, p.beta1, p.beta2, q)
            bounds = error_bounds(p, g.m, g.n)
            ok = (
                sum(sums[k] for k in PATTERNS) == z
                and sums["1|2|3"] == p.C_of_beta2 * sums["reduced"]
                and abs(sums["1,2,3"]) <= bounds["1,2,3"]
                and all(abs(sums[k]) <= bounds["one-separated"] for k in ("1|2,3", "2|1,3", "3|1,2"))
            )
            res.record(ok, f"partition sums {g} q={q}")
    return res


def check_q0(rng: random.Random, max_edges: int) -> CheckResult:
    res = CheckResult("reliability-stretch-identity")
    for _ in range(20):
        g = random_multigraph(rng, min(max_edges, 6), max_vertices=4)
        if not is_connected(g):
            continue
        y = rng.choice((Fraction(-3), Fraction(-5, 2), Fraction(-4)))
        alpha, _, alpha2 = q0_stretch_params(y)
        w = tuple(rng.choice((alpha, alpha2)) for _ in range(g.m))
        res.record(check_q0_identity(WeightedGraph(g, w), y), f"{g} y={y}")
    return res


def check_three_dm(rng: random.Random, max_edges: int) -> CheckResult:
    res = CheckResult("three-dm-recovery")
    small = [
        ThreeDMInstance(1, ((1, 1, 1),)),
        ThreeDMInstance(2, ((1, 1, 1), (2, 2, 2), (1, 2, 1))),
        ThreeDMInstance(2, ((1, 1, 1), (1, 2, 2), (2, 1, 1))),
    ]
    for inst in small:
        res.record(check_observations(inst, 3).ok, f"observations {inst}")
    insts = small + [ThreeDMInstance(3, tuple(tuple(rng.randint(1, 3) for _ in range(3)) for _ in range(4)))]
    for inst in insts:
        for q, a1, a2 in ((3, 3, -6), (-1, -1, 2)):
            _, _, count, residual = run_3dm(inst, q, a1, a2)
            res.record(count == count_3dm(inst) and residual <= Fraction(1, 4), f"{inst} q={q}")
    return res


def check_matchings(rng: random.Random, max_edges: int) -> CheckResult:
    res = CheckResult("perfect-matching-recovery")
    graphs = [cycle_graph(4), complete_graph(4), path_graph(3)]
    for _ in range(5):
        n = rng.choice((4, 6))
        graphs.append(random_connected_simple(rng, n, rng.randint(0, 3)))
    for g in graphs:
        _, _, count, residual = run_matchings(g, 2, -4)
        res.record(count == count_perfect_matchings(g) and residual <= Fraction(1, 4), str(g))
        if g.m <= 6:
            res.record(check_matching_observations(g)[1] == 0, f"observations {g}")
    fisher = CheckResult("fisher-matching-route")
    for g in all_multigraphs(min(max_edges, 6)):
        for y in (-2, -3, 3):
            fisher.record(fisher_ising_via_matchings(g, y) == z_constant(g, 2, y - 1), f"{g} y={y}")
    res.passed += fisher.passed
    res.total += fisher.total
    res.failures += fisher.failures
    return res


def check_colourings(rng: random.Random, max_edges: int) -> CheckResult:
    res = CheckResult("three-colouring-recovery")
    y = Fraction(-1, 2)
    for M in (1, 2, 40):
        res.record(not check_HM(build_HM(M, 4, y)), f"gadget M={M}")
    for g in (cycle_graph(4), path_graph(3)):
        res.record(interval_bounds_hold(g, y), f"interval bounds {g}")
        res.record(recover_three_colourings(g, y) == proper_colourings(g, 3), str(g))
    return res


# -- atlas ---------------------------------------------------------------------

ATLAS_FIXTURES = (
    (("1", "1"), Tag.FP_EXACT, ()),
    (("1/3", "-2"), Tag.EQUIV_PERFECT_MATCHINGS, ()),
    (("-5/3", "-1/2"), Tag.NO_FPRAS_UNLESS_RP_SHARP_P, (Tag.NO_FPRAS_UNLESS_RP_NP,)),
    (("0", "-2"), Tag.NO_FPRAS_UNLESS_RP_NP, ()),
    (("2", "1"), Tag.UNKNOWN, ()),
    (("3", "3"), Tag.UNKNOWN, ()),
)


def check_atlas(rng: random.Random, max_edges: int) -> CheckResult:
    res = CheckResult("atlas-fixtures")
    for (x, y), tag, also in ATLAS_FIXTURES:
        cls = classify(TuttePoint(Fraction(x), Fraction(y)))
        listed = {f.tag for f in cls.applicable}
        res.record(cls.tag is tag and all(t in listed for t in also), f"({x}, {y}) -> {cls.tag}")
    plan = plan_shift(TuttePoint(Fraction(-1, 5), Fraction(0)), "far-left", max_depth=20)
    alternating = all(a.op != b.op for a, b in zip(plan.steps, plan.steps[1:]))
    res.record(len(plan.steps) == 14 and alternating and all(s.k == 2 for s in plan.steps), "14-step plan")
    res.record(all(p.q == plan.start.q for p in plan.path) and plan.replay() == plan.end, "plan replay")
    prefix = ShiftPlan(plan.start, plan.steps[:4], plan.path[4], plan.path[:5])
    res.record(shift_xy(prefix.gadget(), plan.start).target == prefix.end, "plan prefix gadget")
    for x, y in (("-1/2", "-3/4"), ("-1", "1/5"), ("-1/4", "-1/4"), ("-3", "2"), ("1/2", "-4")):
        p = TuttePoint(Fraction(x), Fraction(y))
        try:
            res.record(hardness_witness(p).check(), f"witness at {p}")
        except Exception as exc:  # noqa: BLE001 - any failure is a failed check
            res.record(False, f"witness at {p}: {exc}")
    return res


CHECKS: dict[str, tuple[Check, ...]] = {
    "identities": (
        check_evaluators, check_conversion, check_h1_product, check_potts,
        check_tensor, check_two_sum, check_closed_forms, check_transitivity,
    ),
    "reductions": (check_three_way, check_q0, check_three_dm, check_matchings, check_colourings),
    "atlas": (check_atlas,),
}


def run_suite(name: str, max_edges: int = 6, seed: int = 42) -> list[CheckResult]:
    suites = SUITES if name == "all" else (name,)
    out = []
    for suite in suites:
        for check in CHECKS[suite]:
            out.append(check(random.Random(f"{seed}:{check.__name__}"), max_edges))
    return out
