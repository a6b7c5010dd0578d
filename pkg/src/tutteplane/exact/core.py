"""Shared types for exact evaluation: points of the Tutte plane, edge-weighted
graphs and the enumeration caps."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from tutteplane.multigraph import Multigraph
from tutteplane.rational import Q, RationalLike


class EnumerationCapError(ValueError):
    """An exhaustive enumeration was asked to go past its configured cap."""


@dataclass
class EnumerationCaps:
    subset_edges: int = 24
    colouring_vertices: int = 16


CAPS = EnumerationCaps()


def check_subset_cap(m: int, cap: int | None) -> None:
    limit = CAPS.subset_edges if cap is None else cap
    if m > limit:
        raise EnumerationCapError(
            f"{m} edges exceeds the subset-enumeration cap of {limit}; "
            "use the frontier evaluator or raise the cap"
        )


@dataclass(frozen=True)
class TuttePoint:
    x: Fraction
    y: Fraction

    def __init__(self, x: RationalLike, y: RationalLike) -> None:
        object.__setattr__(self, "x", Q(x))
        object.__setattr__(self, "y", Q(y))

    @property
    def q(self) -> Fraction:
        return (self.x - 1) * (self.y - 1)

    @property
    def alpha(self) -> Fraction:
        """Random-cluster edge weight ``y - 1``."""
        return self.y - 1

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self) -> str:
        return f"TuttePoint({self.x}, {self.y})"


@dataclass(frozen=True)
class WeightedGraph:
    graph: Multigraph
    weights: tuple[Fraction, ...] = field(default=())

    def __post_init__(self) -> None:
        weights = tuple(Q(w) for w in self.weights)
        if len(weights) != self.graph.m:
            raise ValueError(f"{len(weights)} weights for {self.graph.m} edges")
        object.__setattr__(self, "weights", weights)

    @classmethod
    def constant(cls, graph: Multigraph, weight: RationalLike) -> "WeightedGraph":
        return cls(graph, (Q(weight),) * graph.m)

    @classmethod
    def of(cls, graph: Multigraph, weights: Sequence[RationalLike]) -> "WeightedGraph":
        return cls(graph, tuple(weights))

    @property
    def n(self) -> int:
        return self.graph.vertex_count

    @property
    def m(self) -> int:
        return self.graph.m
