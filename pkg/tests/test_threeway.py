from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import connected_multigraphs

from tutteplane.exact import WeightedGraph, z_frontier
from tutteplane.generators import random_connected_simple
from tutteplane.multigraph import Multigraph, complete_graph, cycle_graph, star_graph
from tutteplane.reductions.threeway import (
    PATTERNS,
    HypothesisError,
    ThreeWayCutInstance,
    bedrock_params,
    build_3waycut_gadget,
    check_bedrock,
    check_q0_identity,
    cut_constant,
    error_bounds,
    evaluate_gadget,
    expand_with_thickenings,
    min_3way_cuts,
    partition_sums,
    q0_stretch_params,
    qbar,
    recover_cut_count,
)
from tutteplane.shifts import thicken_alpha

INSTANCES = [
    ThreeWayCutInstance(star_graph(3), (2, 3, 4)),
    ThreeWayCutInstance(complete_graph(4), (1, 2, 3)),
    ThreeWayCutInstance(cycle_graph(6), (1, 3, 5)),
]


def test_star_brute_force():
    assert min_3way_cuts(INSTANCES[0]) == (2, 3)


def test_instance_hypotheses():
    with pytest.raises(HypothesisError):
        ThreeWayCutInstance(star_graph(3), (2, 2, 4))
    with pytest.raises(HypothesisError):
        ThreeWayCutInstance(Multigraph(4, ((1, 2), (1, 2), (3, 4))), (1, 2, 3))
    with pytest.raises(HypothesisError):
        bedrock_params(3, 4, 1, 1, Fraction(-1, 2))


def test_qbar_and_constant():
    assert qbar(Fraction(-1)) >= 1 and qbar(Fraction(3)) >= 3
    # C(-1) with beta2 = -1 keeps only the two-term part.
    assert cut_constant(3, -1) == 2 * 1


@pytest.mark.parametrize("inst", INSTANCES)
@pytest.mark.parametrize("q", [3, 4, -1])
def test_recovery_and_bounds(inst, q):
    g = inst.graph
    p = bedrock_params(g.m, g.n, q, 1, Fraction(-1, 2))
    check_bedrock(p, g.m, g.n)
    gw = build_3waycut_gadget(inst, p.beta1, p.beta2)
    z = z_frontier(gw, q)
    rec = recover_cut_count(z, p, g.m)
    assert (rec.c, rec.N) == min_3way_cuts(inst)
    assert rec.residual <= Fraction(1, 4)
    sums = partition_sums(inst, p.beta1, p.beta2, q)
    assert sum(sums[k] for k in PATTERNS) == z
    assert sums["1|2|3"] == p.C_of_beta2 * sums["reduced"]
    bounds = error_bounds(p, g.m, g.n)
    assert abs(sums["1,2,3"]) <= bounds["1,2,3"]
    assert all(abs(sums[k]) <= bounds["one-separated"] for k in ("1|2,3", "2|1,3", "3|1,2"))


def test_thickened_gadget_scales_trivially():
    inst = INSTANCES[0]
    beta1, beta2 = thicken_alpha(Fraction(1, 2), 3), thicken_alpha(Fraction(-1, 2), 2)
    gw = build_3waycut_gadget(inst, beta1, beta2)
    expanded, scale = expand_with_thickenings(gw, 3, Fraction(1, 2), 3, Fraction(-1, 2), 2)
    assert scale == 1
    assert expanded.m == 3 * inst.graph.m + 2 * 3
    assert evaluate_gadget(gw, 3) == scale * z_frontier(expanded, 3)


@settings(max_examples=12)
@given(st.integers(min_value=0, max_value=10_000), st.sampled_from([3, -1]))
def test_random_instances(seed, q):
    rng = random.Random(seed)
    g = random_connected_simple(rng, rng.randint(3, 5), rng.randint(0, 2))
    inst = ThreeWayCutInstance(g, tuple(rng.sample(range(1, g.n + 1), 3)))
    p = bedrock_params(g.m, g.n, q, 1, Fraction(-1, 2))
    rec = recover_cut_count(z_frontier(build_3waycut_gadget(inst, p.beta1, p.beta2), q), p, g.m)
    assert (rec.c, rec.N) == min_3way_cuts(inst)


def test_q0_params():
    assert q0_stretch_params(-3) == (-4, 4, -1)
    with pytest.raises(HypothesisError):
        q0_stretch_params(Fraction(-1, 2))


@given(connected_multigraphs(max_vertices=4, max_edges=5), st.sampled_from([Fraction(-3), Fraction(-5, 2)]), st.data())
def test_q0_identity(g, y, data):
    alpha, _, alpha2 = q0_stretch_params(y)
    w = tuple(data.draw(st.sampled_from([alpha, alpha2])) for _ in range(g.m))
    assert check_q0_identity(WeightedGraph(g, w), y)
