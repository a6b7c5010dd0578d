from __future__ import annotations

import random

import networkx as nx
import pytest

from tutteplane.generators import (
    all_multigraphs,
    random_connected_simple,
    random_multigraph,
    random_simple_graph,
    random_weights,
)
from tutteplane.multigraph import is_connected

# Loopless multigraphs without isolated vertices, by number of edges (OEIS A050535).
LOOPLESS_BY_EDGES = [1, 1, 3, 8, 23, 66, 212]


def test_loopless_counts_match_the_known_sequence():
    graphs = all_multigraphs(6, loops=False)
    by_edges = [sum(1 for g in graphs if g.m == m) for m in range(7)]
    assert by_edges == LOOPLESS_BY_EDGES


def test_classes_are_pairwise_non_isomorphic():
    graphs = [g for g in all_multigraphs(4) if g.m == 4]

    def as_nx(g):
        h = nx.MultiGraph()
        h.add_nodes_from(range(1, g.n + 1))
        h.add_edges_from(g.edges)
        return h

    def match(a, b):
        return nx.is_isomorphic(as_nx(a), as_nx(b), edge_match=lambda x, y: len(x) == len(y))

    for i, a in enumerate(graphs):
        for b in graphs[i + 1:]:
            assert not match(a, b)


def test_with_loops_contains_loopless():
    assert len(all_multigraphs(3)) > len(all_multigraphs(3, loops=False))
    assert all(g.n == 1 or min(g.degrees()[1:]) > 0 for g in all_multigraphs(4))


@pytest.mark.parametrize("seed", range(5))
def test_random_generators(seed):
    rng = random.Random(seed)
    g = random_multigraph(rng, 8)
    assert g.m <= 8
    s = random_simple_graph(rng, 6, 0.5)
    assert s.is_simple()
    c = random_connected_simple(rng, 6, 2)
    assert is_connected(c) and c.is_simple()
    assert len(random_weights(rng, 5)) == 5


def test_random_multigraph_without_loops():
    rng = random.Random(3)
    for _ in range(50):
        g = random_multigraph(rng, 8, loops=False)
        assert not any(g.is_loop(e) for e in range(g.m))
