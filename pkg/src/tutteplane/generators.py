"""Graph families for the property suites: exhaustive small multigraphs and seeded random ones."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from tutteplane.multigraph import Multigraph


def _as_nx(g: Multigraph) -> nx.Graph:
    """Simple labelled graph encoding multiplicities (loops become node attributes)."""
    h = nx.Graph()
    h.add_nodes_from(range(1, g.n + 1), loops=0)
    for u, v in g.edges:
        if u == v:
            h.nodes[u]["loops"] += 1
        elif h.has_edge(u, v):
            h[u][v]["mult"] += 1
        else:
            h.add_edge(u, v, mult=1)
    return h


def _invariant(g: Multigraph, hx: nx.Graph) -> tuple:
    for v, data in hx.nodes(data=True):
        data["label"] = str(data["loops"])
    for _, _, data in hx.edges(data=True):
        data["label"] = str(data["mult"])
    wl = nx.weisfeiler_lehman_graph_hash(hx, node_attr="label", edge_attr="label", iterations=3)
    return (g.n, g.m, wl)


def _isomorphic(a: nx.Graph, b: nx.Graph) -> bool:
    return GraphMatcher(
        a, b,
        node_match=lambda p, q: p["loops"] == q["loops"],
        edge_match=lambda p, q: p["mult"] == q["mult"],
    ).is_isomorphic()


def _extensions(g: Multigraph, loops: bool):
    n = g.n
    for u in range(1, n + 1):
        for v in range(u, n + 1):
            if u != v or loops:
                yield n, (u, v)
        yield n + 1, (u, n + 1)
    if loops:
        yield n + 1, (n + 1, n + 1)
    yield n + 2, (n + 1, n + 2)


@lru_cache(maxsize=None)
def all_multigraphs(max_edges: int, *, loops: bool = True) -> tuple[Multigraph, ...]:
    """Every multigraph with at most ``max_edges`` edges and no isolated vertex, up to isomorphism.

    The single-vertex graph is included as well.  Each layer extends the
    previous one by one edge in every possible way and drops isomorphic
    duplicates, so every class is reached.
    """
    layers: list[list[Multigraph]] = [[Multigraph(0, ())]]
    for _ in range(max_edges):
        buckets: dict[tuple, list[tuple[Multigraph, nx.Graph]]] = {}
        for g in layers[-1]:
            for new_n, edge in _extensions(g, loops):
                h = Multigraph(new_n, g.edges + (edge,))
                hx = _as_nx(h)
                key = _invariant(h, hx)
                bucket = buckets.setdefault(key, [])
                if not any(_isomorphic(hx, other) for _, other in bucket):
                    bucket.append((h, hx))
        layers.append([h for bucket in buckets.values() for h, _ in bucket])
    return (Multigraph(1, ()),) + tuple(g for layer in layers[1:] for g in layer)


def random_multigraph(rng: random.Random, max_edges: int, max_vertices: int = 6, loops: bool = True) -> Multigraph:
    n = rng.randint(1, max_vertices)
    m = rng.randint(0, max_edges)
    edges = []
    for _ in range(m):
        u = rng.randint(1, n)
        v = rng.randint(1, n)
        if u == v and (not loops or n > 1 and rng.random() < 0.7):
            if n == 1:
                continue
            v = u % n + 1
        edges.append((u, v))
    return Multigraph(n, tuple(edges))


def random_simple_graph(rng: random.Random, n: int, p: float) -> Multigraph:
    edges = tuple((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p)
    return Multigraph(n, edges)


def random_connected_simple(rng: random.Random, n: int, extra: int) -> Multigraph:
    """Random spanning tree plus up to ``extra`` further distinct edges."""
    edges = {(rng.randint(1, v - 1), v) for v in range(2, n + 1)}
    candidates = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if (u, v) not in edges]
    rng.shuffle(candidates)
    edges |= set(candidates[:extra])
    return Multigraph(n, tuple(sorted(edges)))


def random_weights(rng: random.Random, m: int, pool=None) -> tuple[Fraction, ...]:
    pool = pool or [Fraction(a, b) for a in range(-4, 5) for b in (1, 2, 3) if a]
    return tuple(rng.choice(pool) for _ in range(m))
