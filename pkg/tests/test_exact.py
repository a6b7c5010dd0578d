from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import connected_multigraphs, multigraphs, points, small_rationals, weighted_graphs

from tutteplane.exact import (
    CAPS,
    ConversionUndefined,
    EnumerationCapError,
    TuttePoint,
    WeightedGraph,
    chromatic_value,
    count_perfect_matchings,
    count_spanning_trees,
    potts,
    potts_tutte_check,
    proper_colourings,
    reliability_constant,
    reliability_frontier,
    reliability_r,
    simplify_parallel_series,
    t_from_z,
    tutte_bruteforce,
    tutte_delcon,
    tutte_eval,
    z_bruteforce,
    z_constant,
    z_frontier,
    z_from_t,
)
from tutteplane.multigraph import Multigraph, complete_graph, components, cycle_graph, is_connected, path_graph


def _acyclic(n: int, edges) -> bool:
    h = nx.MultiGraph()
    h.add_nodes_from(range(1, n + 1))
    h.add_edges_from(edges)
    return nx.is_forest(h) if h.number_of_edges() else True


def _forests(g: Multigraph) -> int:
    return sum(
        _acyclic(g.n, [g.edges[i] for i in subset])
        for r in range(g.m + 1)
        for subset in itertools.combinations(range(g.m), r)
    )


def _matchings_by_enumeration(g: Multigraph) -> int:
    if g.n % 2:
        return 0
    total = 0
    for subset in itertools.combinations(range(g.m), g.n // 2):
        ends = [v for i in subset for v in g.edges[i]]
        total += len(set(ends)) == g.n and not any(g.is_loop(i) for i in subset)
    return total


# -- known values --------------------------------------------------------------------

@pytest.mark.parametrize(
    "g, x, y, expected",
    [
        (complete_graph(3), 1, 1, 3),
        (Multigraph(1, ((1, 1),)), 5, -2, -2),
        (path_graph(1), 7, 3, 7),
        (complete_graph(4), 2, 2, 64),
        (cycle_graph(4), 1, 1, 4),
        (Multigraph(0), 3, 3, 1),
    ],
)
def test_known_values(g, x, y, expected):
    p = TuttePoint(x, y)
    assert tutte_bruteforce(g, p) == tutte_delcon(g, p) == tutte_eval(g, p) == expected


def test_triangle_h1_weight_two():
    assert z_bruteforce(WeightedGraph.constant(complete_graph(3), 2), 1) == 27


def test_conversion_undefined_on_axes():
    with pytest.raises(ConversionUndefined):
        t_from_z(1, TuttePoint(1, 3), 2, 1)


def test_subset_cap_is_actionable():
    g = Multigraph(2, ((1, 2),) * 30)
    with pytest.raises(EnumerationCapError, match="cap of 24"):
        tutte_bruteforce(g, TuttePoint(2, 2))
    assert tutte_eval(g, TuttePoint(2, 2)) == 2**30
    assert CAPS.subset_edges == 24


def test_chromatic_values():
    assert chromatic_value(cycle_graph(4), 3) == 18
    assert chromatic_value(path_graph(3), 3) == 24
    assert chromatic_value(complete_graph(4), 3) == 0
    assert proper_colourings(cycle_graph(4), 3) == 18


def test_matching_counts():
    assert count_perfect_matchings(cycle_graph(4)) == 2
    assert count_perfect_matchings(complete_graph(4)) == 3
    assert count_perfect_matchings(path_graph(3)) == 1
    assert count_perfect_matchings(complete_graph(3)) == 0


# -- evaluator equivalence ----------------------------------------------------------------

@given(multigraphs(), points)
def test_three_evaluators_agree(g, p):
    assert tutte_delcon(g, p) == tutte_bruteforce(g, p) == tutte_eval(g, p)


@given(weighted_graphs(), small_rationals)
def test_z_frontier_matches_bruteforce(gw, q):
    assert z_frontier(gw, q) == z_bruteforce(gw, q)


@given(multigraphs(), points)
def test_tutte_random_cluster_conversion(g, p):
    if p.x == 1 or p.y == 1:
        return
    z = z_constant(g, p.q, p.y - 1)
    kappa = components(g)
    assert t_from_z(z, p, g.n, kappa) == tutte_eval(g, p)
    assert z_from_t(tutte_eval(g, p), p, g.n, kappa) == z


@given(weighted_graphs())
def test_q_one_is_a_product(gw):
    expected = Fraction(1)
    for w in gw.weights:
        expected *= 1 + w
    assert z_frontier(gw, 1) == expected


# -- independent combinatorial oracles ---------------------------------------------------------

@given(connected_multigraphs(max_edges=7))
def test_spanning_trees(g):
    assert tutte_eval(g, TuttePoint(1, 1)) == count_spanning_trees(g)


@given(multigraphs(max_edges=7))
def test_all_subsets(g):
    assert tutte_eval(g, TuttePoint(2, 2)) == 2**g.m


@given(multigraphs(max_edges=7))
def test_forests(g):
    assert tutte_eval(g, TuttePoint(2, 1)) == _forests(g)


@given(multigraphs(max_vertices=6, max_edges=8))
def test_perfect_matchings(g):
    assert count_perfect_matchings(g) == _matchings_by_enumeration(g)


@given(multigraphs(max_vertices=4, max_edges=6), st.sampled_from([2, 3]), small_rationals.filter(lambda y: y != 1))
def test_potts_matches_tutte(g, q, y):
    assert potts_tutte_check(g, q, y)
    assert potts(g, q, y) == z_constant(g, q, y - 1)


@given(multigraphs(max_vertices=4, max_edges=6), st.integers(min_value=1, max_value=4))
def test_chromatic_matches_colourings(g, lam):
    assert chromatic_value(g, lam) == proper_colourings(g, lam)


@given(connected_multigraphs(max_edges=7), small_rationals)
def test_reliability_evaluators(g, alpha):
    gw = WeightedGraph.constant(g, alpha)
    assert reliability_frontier(gw) == reliability_r(gw) == reliability_constant(g, alpha)


@given(weighted_graphs(max_edges=7), small_rationals.filter(lambda q: q != 0))
def test_series_parallel_simplification_preserves_z(gw, q):
    try:
        res = simplify_parallel_series(gw, q)
    except ZeroDivisionError:
        return
    assert z_frontier(gw, q) == res.scale * z_frontier(res.graph, q)


def test_reliability_requires_connected():
    assert not is_connected(Multigraph(2))
    with pytest.raises(ValueError):
        reliability_frontier(WeightedGraph.constant(Multigraph(2), 1))
