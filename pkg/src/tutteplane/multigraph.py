"""Multigraphs with loops and parallel edges, plus the structural operations
(deletion, contraction, 2-sum, tensor product, stretch, thickening) that the
evaluators and gadget constructions are built from.

Vertices are the integers ``1..vertex_count``.  Every operation returns a new
graph; renumbering is deterministic (surviving vertices keep their relative
order, new vertices are appended in edge order).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graphs and invalid edge indices."""


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise GraphError("vertex_count must be non-negative")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for i, (u, v) in enumerate(edges):
            if not (1 <= u <= self.vertex_count and 1 <= v <= self.vertex_count):
                raise GraphError(f"edge {i} = ({u}, {v}) has an endpoint outside 1..{self.vertex_count}")
        object.__setattr__(self, "edges", edges)

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * (self.vertex_count + 1)
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def is_loop(self, e: int) -> bool:
        u, v = self.edges[_check_edge(self, e)]
        return u == v

    def canonical_edges(self) -> list[Edge]:
        """Edges with endpoints sorted, in sorted order (a labelled multiset key)."""
        return sorted((min(u, v), max(u, v)) for u, v in self.edges)

    def is_simple(self) -> bool:
        keys = [(min(u, v), max(u, v)) for u, v in self.edges]
        return all(u != v for u, v in keys) and len(set(keys)) == len(keys)


@dataclass(frozen=True)
class DistinguishedEdgeGraph:
    """A gadget graph ``K`` with a distinguished edge ``e`` that is not a bridge."""

    graph: Multigraph
    distinguished_edge: int

    def __post_init__(self) -> None:
        _check_edge(self.graph, self.distinguished_edge)
        if is_bridge(self.graph, self.distinguished_edge):
            raise GraphError("the distinguished edge of a gadget must not be a bridge")

    @property
    def endpoints(self) -> Edge:
        u, v = self.graph.edges[self.distinguished_edge]
        return (min(u, v), max(u, v))


def _check_edge(g: Multigraph, e: int) -> int:
    if not isinstance(e, int) or not 0 <= e < len(g.edges):
        raise GraphError(f"invalid edge index {e!r} for a graph with {len(g.edges)} edges")
    return e


class _DisjointSet:
    __slots__ = ("parent",)

    def __init__(self, size: int) -> None:
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def count_components(vertex_count: int, edges: Iterable[Edge]) -> int:
    ds = _DisjointSet(vertex_count + 1)
    k = vertex_count
    for u, v in edges:
        if ds.union(u, v):
            k -= 1
    return k


def components(g: Multigraph) -> int:
    """Number of connected components; isolated vertices count, loops are ignored."""
    return count_components(g.vertex_count, g.edges)


def component_labels(g: Multigraph) -> list[int]:
    """``labels[v]`` is the representative of the component holding ``v`` (index 0 unused)."""
    ds = _DisjointSet(g.vertex_count + 1)
    for u, v in g.edges:
        ds.union(u, v)
    return [ds.find(v) for v in range(g.vertex_count + 1)]


def is_connected(g: Multigraph) -> bool:
    return components(g) <= 1


def is_bridge(g: Multigraph, e: int) -> bool:
    _check_edge(g, e)
    u, v = g.edges[e]
    if u == v:
        return False
    ds = _DisjointSet(g.vertex_count + 1)
    for i, (a, b) in enumerate(g.edges):
        if i != e:
            ds.union(a, b)
    return ds.find(u) != ds.find(v)


def bridges(g: Multigraph) -> list[int]:
    return [e for e in range(g.m) if is_bridge(g, e)]


def delete(g: Multigraph, e: int) -> Multigraph:
    _check_edge(g, e)
    return Multigraph(g.vertex_count, g.edges[:e] + g.edges[e + 1:])


def identify(g: Multigraph, a: int, b: int) -> Multigraph:
    """Merge vertices ``a`` and ``b`` into the lower-numbered one."""
    if a == b:
        return g
    keep, drop = min(a, b), max(a, b)

    def relabel(v: int) -> int:
        if v == drop:
            return keep
        return v - 1 if v > drop else v

    return Multigraph(g.vertex_count - 1, tuple((relabel(u), relabel(v)) for u, v in g.edges))


def contract(g: Multigraph, e: int) -> Multigraph:
    """Contract edge ``e``; contracting a loop is the same as deleting it."""
    u, v = g.edges[_check_edge(g, e)]
    return identify(delete(g, e), u, v)


def delete_contract(g: Multigraph, deleted: Iterable[int], contracted: Iterable[int]) -> Multigraph:
    """Delete one set of edges and contract another (disjoint) set in one pass."""
    deleted, contracted = set(deleted), set(contracted)
    if deleted & contracted:
        raise GraphError("an edge cannot be both deleted and contracted")
    ds = _DisjointSet(g.vertex_count + 1)
    for e in contracted:
        u, v = g.edges[_check_edge(g, e)]
        ds.union(u, v)
    roots = sorted({ds.find(v) for v in range(1, g.vertex_count + 1)})
    new_id = {r: i + 1 for i, r in enumerate(roots)}
    kept = tuple(
        (new_id[ds.find(u)], new_id[ds.find(v)])
        for i, (u, v) in enumerate(g.edges)
        if i not in deleted and i not in contracted
    )
    return Multigraph(len(roots), kept)


def disjoint_union(g: Multigraph, h: Multigraph) -> Multigraph:
    shift = g.vertex_count
    return Multigraph(g.vertex_count + h.vertex_count, g.edges + tuple((u + shift, v + shift) for u, v in h.edges))


def _gadget_copy(k: DistinguishedEdgeGraph, v: int, v2: int, next_vertex: int, flip: bool = False):
    """Map K's vertices for a 2-sum onto the edge (v, v2) of the host.

    Returns (vertex map, number of new vertices).  ``v`` is the lower endpoint
    of the host edge and is matched with the lower endpoint of ``e``, unless
    ``flip`` is set.
    """
    u, u2 = k.endpoints
    if flip:
        u, u2 = u2, u
    mapping: dict[int, int] = {}
    mapping[u] = v
    if u2 in mapping and mapping[u2] != v2:
        # e is a loop of K: both endpoints collapse onto one host vertex, so the host
        # edge endpoints must be glued as well.
        raise GraphError("a gadget whose distinguished edge is a loop cannot be 2-summed")
    mapping[u2] = v2
    fresh = 0
    for w in range(1, k.graph.vertex_count + 1):
        if w not in mapping:
            fresh += 1
            mapping[w] = next_vertex + fresh - 1
    return mapping, fresh



def two_sum(g: Multigraph, f: int, k: DistinguishedEdgeGraph, *, flip: bool = False) -> Multigraph:
    """2-sum of ``g`` and ``k`` along host edge ``f``.

    Edges of ``g`` other than ``f`` keep their order; the edges of ``K`` other
    than ``e`` follow.  The lower endpoint of ``f`` is identified with the
    lower endpoint of ``e`` (``flip=True`` gives the other identification).
    When ``f`` is a loop both ends of ``e`` land on the same host vertex.
    """
    a, b = g.edges[_check_edge(g, f)]
    v, v2 = min(a, b), max(a, b)
    mapping, fresh = _gadget_copy(k, v, v2, g.vertex_count + 1, flip=flip)
    n = g.vertex_count + fresh
    edges = list(g.edges[:f] + g.edges[f + 1:])
    edges += [(mapping[x], mapping[y]) for i, (x, y) in enumerate(k.graph.edges) if i != k.distinguished_edge]
    return Multigraph(n, tuple(edges))


def tensor_product(g: Multigraph, k: DistinguishedEdgeGraph) -> Multigraph:
    """``G (x) K``: a 2-sum with ``K`` on every edge of ``g``.

    Vertices ``1..n`` of ``g`` come first, then the inner vertices of each copy
    of ``K`` in the order of the host edges; the edges are grouped per host edge.
    """
    n = g.vertex_count
    edges: list[Edge] = []
    for a, b in g.edges:
        v, v2 = min(a, b), max(a, b)
        mapping, fresh = _gadget_copy(k, v, v2, n + 1)
        n += fresh
        edges += [(mapping[x], mapping[y]) for i, (x, y) in enumerate(k.graph.edges) if i != k.distinguished_edge]
    return Multigraph(n, tuple(edges))


def stretch(g: Multigraph, k: int) -> Multigraph:
    """Replace each edge by a path of ``k`` edges (from its lower to its higher endpoint)."""
    if k < 1:
        raise GraphError("stretch length must be at least 1")
    n = g.vertex_count
    edges: list[Edge] = []
    for a, b in g.edges:
        v, v2 = min(a, b), max(a, b)
        path = [v] + list(range(n + 1, n + k)) + [v2]
        n += k - 1
        edges += list(zip(path, path[1:]))
    return Multigraph(n, tuple(edges))


def thicken(g: Multigraph, k: int) -> Multigraph:
    """Replace each edge by ``k`` parallel copies."""
    if k < 1:
        raise GraphError("thickening multiplicity must be at least 1")
    edges = []
    for a, b in g.edges:
        edges += [(min(a, b), max(a, b))] * k
    return Multigraph(g.vertex_count, tuple(edges))


# -- gadget library -----------------------------------------------------------

def cycle_gadget(k: int) -> DistinguishedEdgeGraph:
    """The cycle on ``k+1`` vertices; as a gadget it implements a ``k``-stretch."""
    if k < 1:
        raise GraphError("cycle gadget needs k >= 1")
    if k == 1:
        return parallel_gadget(1)
    edges = [(i, i + 1) for i in range(1, k + 1)] + [(1, k + 1)]
    return DistinguishedEdgeGraph(Multigraph(k + 1, tuple(edges)), k)


def parallel_gadget(k: int) -> DistinguishedEdgeGraph:
    """Two vertices joined by ``k+1`` parallel edges; implements a ``k``-thickening."""
    if k < 1:
        raise GraphError("parallel gadget needs k >= 1")
    return DistinguishedEdgeGraph(Multigraph(2, ((1, 2),) * (k + 1)), k)


IDENTITY_GADGET = parallel_gadget(1)


def compose(k1: DistinguishedEdgeGraph, k2: DistinguishedEdgeGraph) -> DistinguishedEdgeGraph:
    """Gadget implementing the shift of ``k1`` followed by the shift of ``k2``.

    Built from ``k2`` by 2-summing ``k1`` onto every edge except ``k2``'s
    distinguished edge, which stays distinguished.
    """
    host = k2.graph
    n = host.vertex_count
    edges: list[Edge] = []
    new_e = -1
    for i, (a, b) in enumerate(host.edges):
        if i == k2.distinguished_edge:
            new_e = len(edges)
            edges.append((a, b))
            continue
        v, v2 = min(a, b), max(a, b)
        mapping, fresh = _gadget_copy(k1, v, v2, n + 1)
        n += fresh
        edges += [(mapping[x], mapping[y]) for j, (x, y) in enumerate(k1.graph.edges) if j != k1.distinguished_edge]
    return DistinguishedEdgeGraph(Multigraph(n, tuple(edges)), new_e)


def path_graph(length: int) -> Multigraph:
    """Path with ``length`` edges on ``length+1`` vertices."""
    return Multigraph(length + 1, tuple((i, i + 1) for i in range(1, length + 1)))


def cycle_graph(length: int) -> Multigraph:
    if length == 1:
        return Multigraph(1, ((1, 1),))
    if length == 2:
        return Multigraph(2, ((1, 2), (1, 2)))
    return Multigraph(length, tuple((i, i + 1) for i in range(1, length)) + ((1, length),))


def complete_graph(n: int) -> Multigraph:
    return Multigraph(n, tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))


def complete_bipartite(a: int, b: int) -> Multigraph:
    return Multigraph(a + b, tuple((i, a + j) for i in range(1, a + 1) for j in range(1, b + 1)))


def star_graph(leaves: int) -> Multigraph:
    return Multigraph(leaves + 1, tuple((1, i) for i in range(2, leaves + 2)))


def from_edges(edges: Sequence[Edge], vertex_count: int | None = None) -> Multigraph:
    n = max((max(u, v) for u, v in edges), default=0)
    return Multigraph(n if vertex_count is None else vertex_count, tuple(edges))
