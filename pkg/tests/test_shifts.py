from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from strategies import connected_multigraphs, multigraphs, points, small_rationals, weighted_graphs

from tutteplane.exact import TuttePoint, WeightedGraph, reliability_frontier, tutte_eval, z_frontier
from tutteplane.multigraph import components, compose, cycle_gadget, parallel_gadget, stretch, tensor_product, thicken
from tutteplane.shifts import (
    ShiftUndefinedError,
    shift_qalpha,
    shift_xy,
    stretch_alpha,
    stretch_factor_q0,
    stretch_point,
    thicken_alpha,
    thicken_point,
    verify_tensor_identity,
    verify_two_sum_identity,
)
from tutteplane.verify import random_gadget

GADGETS = [cycle_gadget(2), cycle_gadget(3), cycle_gadget(4), parallel_gadget(2), parallel_gadget(3)]
RANDOM_GADGETS = [random_gadget(random.Random(i)) for i in range(6)]
gadgets = st.sampled_from(GADGETS + RANDOM_GADGETS)


def test_stretch_closed_form_example():
    assert stretch_point(TuttePoint(2, 3), 2) == TuttePoint(4, Fraction(5, 3))
    assert thicken_point(TuttePoint(2, 3), 2) == TuttePoint(Fraction(5, 4), 9)


def test_undefined_shift_names_its_denominator():
    with pytest.raises(ShiftUndefinedError) as info:
        stretch_point(TuttePoint(-1, 3), 2)
    assert info.value.denominator == "x^k - 1"


def test_q0_stretch_factor():
    assert stretch_factor_q0(-4, 4) == Fraction(1, 4 * (-4) ** 3)
    with pytest.raises(ShiftUndefinedError):
        stretch_factor_q0(0, 2)


@given(gadgets, points)
def test_shift_preserves_q(k, p):
    try:
        s = shift_xy(k, p)
    except ShiftUndefinedError:
        return
    assert s.target.q == p.q


@given(multigraphs(max_vertices=4, max_edges=4), gadgets, points)
def test_tensor_identity(g, k, p):
    try:
        assert verify_tensor_identity(g, k, p)
    except ShiftUndefinedError:
        pass


@given(st.integers(min_value=1, max_value=8), points)
def test_closed_forms_match_general_shift(k, p):
    for gadget, closed in ((cycle_gadget(k), stretch_point), (parallel_gadget(k), thicken_point)):
        try:
            expected = closed(p, k)
            general = shift_xy(gadget, p).target
        except ShiftUndefinedError:
            continue
        assert general == expected


@given(st.integers(min_value=1, max_value=6), small_rationals, small_rationals)
def test_alpha_closed_forms(k, q, alpha):
    try:
        assert shift_qalpha(parallel_gadget(k), q, alpha).alpha_prime == thicken_alpha(alpha, k)
    except ShiftUndefinedError:
        pass
    try:
        expected = stretch_alpha(q, alpha, k)
        got = shift_qalpha(cycle_gadget(k), q, alpha).alpha_prime
    except ShiftUndefinedError:
        return
    assert got == expected


@given(multigraphs(max_vertices=4, max_edges=4), st.integers(min_value=1, max_value=4), points)
def test_stretch_and_thicken_graphs_shift(g, k, p):
    # Stretching the graph evaluates the original at the stretched point (up to the tensor scale).
    for build, k_gadget in ((stretch, cycle_gadget(k)), (thicken, parallel_gadget(k))):
        try:
            s = shift_xy(k_gadget, p)
        except ShiftUndefinedError:
            continue
        scale = s.L**g.m * s.M ** (g.n - components(g))
        assert tutte_eval(g, s.target) == scale * tutte_eval(build(g, k), p)


@given(weighted_graphs(max_vertices=4, max_edges=5), gadgets, st.data())
def test_two_sum_identity(gw, k, data):
    assume(gw.m > 0)
    q = data.draw(st.sampled_from([Fraction(2), Fraction(3), Fraction(-1), Fraction(5, 2)]))
    alpha = data.draw(small_rationals)
    f = data.draw(st.integers(min_value=0, max_value=gw.m - 1))
    try:
        assert verify_two_sum_identity(gw, f, k, q, alpha)
    except ShiftUndefinedError:
        pass


@given(connected_multigraphs(max_vertices=4, max_edges=5), gadgets, st.data())
def test_two_sum_identity_at_q0(g, k, data):
    assume(g.m > 0)
    weights = tuple(data.draw(st.lists(small_rationals, min_size=g.m, max_size=g.m)))
    alpha = data.draw(small_rationals)
    f = data.draw(st.integers(min_value=0, max_value=g.m - 1))
    try:
        assert verify_two_sum_identity(WeightedGraph(g, weights), f, k, 0, alpha)
    except ShiftUndefinedError:
        pass


@given(st.integers(min_value=1, max_value=5), small_rationals)
def test_q0_stretch_weight(k, alpha):
    assume(alpha != 0)
    assert stretch_alpha(0, alpha, k) == alpha / k
    assert shift_qalpha(cycle_gadget(k), 0, alpha).alpha_prime == alpha / k


@given(gadgets, gadgets, points)
def test_shift_transitivity(k1, k2, p):
    try:
        chained = shift_xy(k2, shift_xy(k1, p).target).target
        direct = shift_xy(compose(k1, k2), p).target
    except ShiftUndefinedError:
        return
    assert chained == direct


def test_tensor_product_with_cycle_is_stretch():
    g = parallel_gadget(2).graph
    assert tensor_product(g, cycle_gadget(3)).canonical_edges() == stretch(g, 3).canonical_edges()


@given(connected_multigraphs(max_vertices=4, max_edges=4), st.integers(min_value=2, max_value=4),
       small_rationals.filter(lambda a: a != 0))
def test_q0_stretched_reliability(g, k, alpha):
    # One k-stretched edge at weight alpha simulates alpha/k, scaled by 1/(k alpha^(k-1)) per edge.
    lhs = reliability_frontier(WeightedGraph.constant(g, alpha / k))
    rhs = stretch_factor_q0(alpha, k) ** g.m * reliability_frontier(WeightedGraph.constant(stretch(g, k), alpha))
    assert lhs == rhs


@given(connected_multigraphs(max_vertices=4, max_edges=4), small_rationals)
def test_random_cluster_sum_vanishes_at_q0(g, alpha):
    assert z_frontier(WeightedGraph.constant(g, alpha), 0) == 0
