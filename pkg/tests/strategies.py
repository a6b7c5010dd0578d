"""Hypothesis strategies shared by the property tests."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from tutteplane.exact import TuttePoint, WeightedGraph
from tutteplane.multigraph import Multigraph

small_rationals = st.builds(
    Fraction, st.integers(min_value=-6, max_value=6), st.integers(min_value=1, max_value=4)
)
nonzero_rationals = small_rationals.filter(lambda r: r != 0)


@st.composite
def multigraphs(draw, max_vertices: int = 5, max_edges: int = 7, loops: bool = True) -> Multigraph:
    n = draw(st.integers(min_value=1, max_value=max_vertices))
    vertex = st.integers(min_value=1, max_value=n)
    pairs = st.tuples(vertex, vertex)
    if not loops:
        pairs = pairs.filter(lambda e: e[0] != e[1])
    edges = draw(st.lists(pairs, max_size=max_edges)) if loops or n > 1 else []
    return Multigraph(n, tuple(edges))


@st.composite
def connected_multigraphs(draw, max_vertices: int = 5, max_edges: int = 7) -> Multigraph:
    n = draw(st.integers(min_value=1, max_value=max_vertices))
    tree = [(draw(st.integers(min_value=1, max_value=v - 1)), v) for v in range(2, n + 1)]
    vertex = st.integers(min_value=1, max_value=n)
    extra = draw(st.lists(st.tuples(vertex, vertex), max_size=max(0, max_edges - len(tree))))
    return Multigraph(n, tuple(tree + extra))


@st.composite
def weighted_graphs(draw, max_vertices: int = 5, max_edges: int = 7) -> WeightedGraph:
    g = draw(multigraphs(max_vertices, max_edges))
    weights = draw(st.lists(small_rationals, min_size=g.m, max_size=g.m))
    return WeightedGraph(g, tuple(weights))


points = st.builds(TuttePoint, small_rationals, small_rationals)
