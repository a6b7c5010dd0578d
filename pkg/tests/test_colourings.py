from __future__ import annotations

from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tutteplane.exact import potts, potts_conditioned, proper_colourings
from tutteplane.multigraph import Multigraph, complete_bipartite, complete_graph, cycle_graph, path_graph
from tutteplane.reductions.colourings import (
    GMInstance,
    build_g_prime,
    build_GM,
    build_HM,
    check_HM,
    exact_oracle,
    interval_bounds_hold,
    k_bound_holds,
    noisy_oracle,
    path_block_recurrence,
    path_block_values,
    recover_three_colourings,
    theta_conditioned,
    theta_graph,
    thickening_exponent,
    three_colouring_search,
)
from tutteplane.reductions.threeway import HypothesisError

Y = Fraction(-1, 2)


@given(st.integers(min_value=1, max_value=7), st.sampled_from([Fraction(-1, 2), Fraction(-1, 3), Fraction(-3, 4)]))
def test_path_block_closed_form_matches_recurrence(length, y):
    assert path_block_values(length, y) == path_block_recurrence(length, y)


@given(st.integers(min_value=1, max_value=4), st.integers(min_value=0, max_value=2))
def test_theta_conditioning_matches_enumeration(k1, k2):
    lengths = {1: k1} | ({2: k2} if k2 else {})
    g = theta_graph(lengths)
    same, different = theta_conditioned(lengths, Y)
    assert same == potts_conditioned(g, 4, Y, 1, 2, (1, 1))
    assert different == potts_conditioned(g, 4, Y, 1, 2, (1, 2))


@pytest.mark.parametrize("M", [1, 2, 40])
def test_gadget_ratio_bound(M):
    hm = build_HM(M, 4, Y)
    assert check_HM(hm) == []
    assert -Fraction(1, M) <= hm.ratio <= -Fraction(1, M) + Fraction(1, 2**16)
    assert hm.k % 2 == 1
    assert k_bound_holds(hm)


def test_gadget_hypotheses():
    with pytest.raises(HypothesisError):
        build_HM(1, 4, Fraction(1, 2))
    with pytest.raises(HypothesisError):
        build_HM(100, 4, Y)


def test_thickening_exponent_is_even_and_minimal():
    r = thickening_exponent(4, Y)
    bound = Fraction(1, 2**16 * 4**4)
    assert r % 2 == 0 and abs(Y) ** r < bound and abs(Y) ** (r - 2) >= bound


def test_g_prime_shape():
    g = cycle_graph(4)
    gp = build_g_prime(g, 2)
    assert gp.n == 6 and gp.m == 2 * 4 + 2 * 2 * 4


@pytest.mark.parametrize("g", [cycle_graph(4), path_graph(3)])
def test_interval_bounds(g):
    assert interval_bounds_hold(g, Y)


def test_exact_oracle_matches_enumeration_on_a_small_instance():
    # Swap in a small theta gadget so the glued graph can be enumerated directly.
    hm = build_HM(1, 4, Y)
    lengths = {1: 1, 2: 1}
    same, different = theta_conditioned(lengths, Y)
    small = replace(hm, k=1, ks=(1,), same=same, different=different)
    assert small.lengths == lengths
    inst = GMInstance(build_g_prime(path_graph(3), 2), small, Y)
    assert inst.graph.n == 6 + small.graph.n - 2
    assert exact_oracle(inst) == potts(inst.graph, 4, Y)


@pytest.mark.parametrize("g, expected", [(cycle_graph(4), 18), (path_graph(3), 24)])
def test_recovery(g, expected):
    search = three_colouring_search(g, Y)
    assert search.count == expected == proper_colourings(g, 3)
    assert search.bisections <= g.n**2
    assert search.general_candidates == 1
    assert search.count >= 4 * search.p2


def test_recovery_on_larger_bipartite_graphs():
    for g in (complete_bipartite(2, 3), Multigraph(5, ((1, 2), (2, 3), (3, 4), (4, 5)))):
        assert recover_three_colourings(g, Y) == proper_colourings(g, 3)


def test_noisy_oracle_still_recovers():
    assert recover_three_colourings(cycle_graph(4), Y, noisy_oracle(1e-6, seed=7)) == 18


def test_instance_hypotheses():
    with pytest.raises(HypothesisError):
        recover_three_colourings(complete_graph(3), Y)
    with pytest.raises(HypothesisError):
        recover_three_colourings(path_graph(2), Y)


def test_build_gm_uses_the_minimal_thickening():
    g = cycle_graph(4)
    hm = build_HM(2, 4, Y)
    inst = build_GM(g, hm, Y)
    assert inst.g_prime == build_g_prime(g, thickening_exponent(4, Y))
    assert (inst.a, inst.b) == (5, 6)
    with pytest.raises(ValueError):
        build_GM(g, hm, Fraction(-1, 3))
