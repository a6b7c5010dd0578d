from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from strategies import points

from tutteplane.atlas import (
    TARGETS,
    NoWitness,
    PlanNotFound,
    Tag,
    atlas_grid,
    classify,
    frange,
    hardness_witness,
    plan_shift,
    search_witness,
)
from tutteplane.exact import TuttePoint
from tutteplane.shifts import ShiftUndefinedError, shift_xy
from tutteplane.verify import ATLAS_FIXTURES

SHIFT_RULES = {"halfplane-x", "halfplane-y", "triangle-x", "triangle-y", "boundary-x", "boundary-y", "vicinity"}


@pytest.mark.parametrize("coords, tag, also", ATLAS_FIXTURES)
def test_fixtures(coords, tag, also):
    rc = classify(TuttePoint(*coords))
    assert rc.tag is tag
    listed = {f.tag for f in rc.applicable}
    assert set(also) <= listed


def test_flow_point_has_a_cited_note():
    rc = classify(TuttePoint(0, -2))
    assert rc.tag is Tag.NO_FPRAS_UNLESS_RP_NP
    assert any("flow" in f.hypothesis or "flow" in f.key for f in rc.applicable)


def test_fourteen_step_plan():
    plan = plan_shift(TuttePoint(Fraction(-1, 5), 0), "far-left", ks=(2,))
    assert len(plan.steps) == 14
    assert [s.op for s in plan.steps] == ["stretch", "thicken"] * 7
    assert all(s.k == 2 for s in plan.steps)
    assert plan.end.x < -100 and 0 < plan.end.y < 1
    assert all(pt.q == plan.start.q for pt in plan.path)
    assert plan.replay() == plan.end
    assert float(plan.end.x) == pytest.approx(-103.1, abs=0.05)


def test_short_plan_gadget_matches_replay():
    plan = plan_shift(TuttePoint(Fraction(-1, 5), 0), "far-left")
    prefix = type(plan)(plan.start, plan.steps[:4], plan.path[4], plan.path[:5])
    assert shift_xy(prefix.gadget(), plan.start).target == prefix.replay()


def test_unknown_target_and_depth_limit():
    with pytest.raises(ValueError, match="unknown target"):
        plan_shift(TuttePoint(0, 0), "nowhere")
    with pytest.raises(PlanNotFound):
        plan_shift(TuttePoint(Fraction(-1, 5), 0), "far-left", max_depth=5)


def test_h1_plans_stay_on_h1():
    start = TuttePoint(3, Fraction(3, 2))
    assert start.q == 1
    plan = plan_shift(start, "x-escape")
    assert all(pt.q == 1 for pt in plan.path)
    with pytest.raises(PlanNotFound):
        # On q = 1 every point has (x-1)(y-1) = 1, so x and y both in (-1, 1) is impossible.
        plan_shift(start, lambda p: -1 < p.x < 1 and -1 < p.y < 1, max_depth=6)


@pytest.mark.parametrize(
    "coords", [("-1/2", "-3/4"), ("-1", "1/5"), ("-1/4", "-1/4"), ("-3", "2"), ("1/2", "-4")]
)
def test_witnesses(coords):
    w = hardness_witness(TuttePoint(*coords))
    assert w.check()


def test_no_witness_on_special_hyperbolas():
    with pytest.raises(NoWitness):
        hardness_witness(TuttePoint(Fraction(1, 3), -2))
    assert search_witness(TuttePoint(2, 2), 4) is None


def test_witness_depth_can_upgrade_unknown_points():
    p = TuttePoint(Fraction(-1, 2), 0)
    assert classify(p).tag is Tag.UNKNOWN
    upgraded = classify(p, witness_depth=4)
    assert upgraded.tag is Tag.NO_FPRAS_UNLESS_RP_NP
    assert upgraded.citation == "shift-witness"
    assert search_witness(p, 4).check()


def test_grid_single_cells_and_determinism():
    assert atlas_grid((1, 1), (1, 1), 1)[0].tag is Tag.FP_EXACT
    assert atlas_grid((3, 3), (3, 3), 1)[0].tag is Tag.UNKNOWN
    a = atlas_grid((-2, 2), (-2, 2), Fraction(1, 2))
    b = atlas_grid((-2, 2), (-2, 2), Fraction(1, 2))
    assert [(c.point, c.tag) for c in a] == [(c.point, c.tag) for c in b]
    assert len(a) == 81


def test_frange_rejects_bad_input():
    with pytest.raises(ValueError):
        frange(Fraction(0), Fraction(1), Fraction(0))
    with pytest.raises(ValueError):
        frange(Fraction(1), Fraction(0), Fraction(1))


@given(points)
def test_tag_is_the_strongest_applicable(p):
    rc = classify(p)
    if not rc.applicable:
        assert rc.tag is Tag.UNKNOWN and rc.citation == "none"
    else:
        assert rc.tag.strength == min(f.tag.strength for f in rc.applicable)
        assert rc.justification in rc.applicable


@given(points)
def test_shift_rules_come_with_checkable_witnesses(p):
    rc = classify(p)
    assume(rc.citation in SHIFT_RULES)
    assert hardness_witness(p).check()


@given(points, st.sampled_from(sorted(TARGETS)))
def test_plans_preserve_q_and_replay(p, target):
    try:
        plan = plan_shift(p, target, max_depth=6)
    except (PlanNotFound, ShiftUndefinedError):
        return
    assert TARGETS[target][1](plan.end)
    assert all(pt.q == p.q for pt in plan.path)
    assert plan.replay() == plan.end


@given(st.integers(min_value=2, max_value=12))
def test_h2_points_are_matchings(d):
    y = -Fraction(d, 2) - 1
    p = TuttePoint(1 + 2 / (y - 1), y)
    assert p.q == 2
    assert classify(p).tag is Tag.EQUIV_PERFECT_MATCHINGS
