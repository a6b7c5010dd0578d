"""Text formats: graph files, key=value sidecars, 3-d matching instances and grid TSV.

Graph file::

    # optional comments
    p tutte <n> <m>
    e <u> <v> [<weight>]      (exactly m lines; weights on all edges or none)
    t <v>                     (optional terminals)

3-d matching file::

    p 3dm <n> <m>
    m <i> <j> <k>             (exactly m lines)

Weights and sidecar values are exact rationals written ``p/q`` or as integers.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping

from tutteplane.exact.core import WeightedGraph
from tutteplane.multigraph import GraphError, Multigraph
from tutteplane.rational import Q, fmt
from tutteplane.reductions.threedm import ThreeDMInstance
from tutteplane.reductions.threeway import HypothesisError


class ParseError(ValueError):
    def __init__(self, line: int | None, message: str) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class GraphFile:
    graph: Multigraph
    weights: tuple[Fraction, ...] | None = None
    terminals: tuple[int, ...] = ()
    comments: tuple[str, ...] = field(default=(), compare=False)

    def weighted(self, default: Fraction | None = None) -> WeightedGraph:
        if self.weights is not None:
            return WeightedGraph(self.graph, self.weights)
        if default is None:
            raise ValueError("the graph file carries no weights")
        return WeightedGraph.constant(self.graph, default)


def _int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line, f"{what} must be an integer, got {token!r}") from None


def _rational(token: str, line: int) -> Fraction:
    try:
        return Q(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(line, f"weight must be an exact rational p/q, got {token!r}") from None


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped:
            yield number, stripped


def parse_graph(text: str) -> GraphFile:
    header = None
    edges: list[tuple[int, int]] = []
    weights: list[Fraction | None] = []
    terminals: list[int] = []
    comments: list[str] = []
    for number, line in _lines(text):
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "p":
            if header is not None:
                raise ParseError(number, "duplicate header")
            if len(tokens) != 4 or tokens[1] != "tutte":
                raise ParseError(number, "header must be 'p tutte <n> <m>'")
            header = (_int(tokens[2], number, "n"), _int(tokens[3], number, "m"), number)
            if header[0] < 0 or header[1] < 0:
                raise ParseError(number, "n and m must be non-negative")
            continue
        if header is None:
            raise ParseError(number, f"'{kind}' line before the 'p tutte' header")
        n = header[0]
        if kind == "e":
            if len(tokens) not in (3, 4):
                raise ParseError(number, "edge line must be 'e <u> <v> [<weight>]'")
            u, v = _int(tokens[1], number, "endpoint"), _int(tokens[2], number, "endpoint")
            for end in (u, v):
                if not 1 <= end <= n:
                    raise ParseError(number, f"endpoint {end} outside 1..{n}")
            edges.append((u, v))
            weights.append(_rational(tokens[3], number) if len(tokens) == 4 else None)
        elif kind == "t":
            if len(tokens) != 2:
                raise ParseError(number, "terminal line must be 't <v>'")
            v = _int(tokens[1], number, "terminal")
            if not 1 <= v <= n:
                raise ParseError(number, f"terminal {v} outside 1..{n}")
            terminals.append(v)
        else:
            raise ParseError(number, f"unknown line type {kind!r}")
    if header is None:
        raise ParseError(None, "missing 'p tutte <n> <m>' header")
    n, m, header_line = header
    if len(edges) != m:
        raise ParseError(header_line, f"header declares {m} edges but {len(edges)} edge lines follow")
    given = [w is not None for w in weights]
    if any(given) and not all(given):
        raise ParseError(None, "either every edge carries a weight or none does")
    try:
        graph = Multigraph(n, tuple(edges))
    except GraphError as exc:
        raise ParseError(None, str(exc)) from None
    return GraphFile(graph, tuple(weights) if all(given) and edges else None, tuple(terminals), tuple(comments))


def serialize_graph(gf: GraphFile) -> str:
    out = [f"# {c}" if c else "#" for c in gf.comments]
    out.append(f"p tutte {gf.graph.n} {gf.graph.m}")
    for i, (u, v) in enumerate(gf.graph.edges):
        out.append(f"e {u} {v}" + (f" {fmt(gf.weights[i])}" if gf.weights is not None else ""))
    out += [f"t {v}" for v in gf.terminals]
    return "\n".join(out) + "\n"


def read_graph(path: str | Path) -> GraphFile:
    return parse_graph(Path(path).read_text())


def write_graph(path: str | Path, gf: GraphFile) -> None:
    Path(path).write_text(serialize_graph(gf))


# -- sidecar ---------------------------------------------------------------------

def _value_text(value) -> str:
    if isinstance(value, (Fraction, int)) and not isinstance(value, bool):
        return fmt(value)
    if isinstance(value, (list, tuple)):
        return ",".join(_value_text(v) for v in value)
    return str(value)


def serialize_sidecar(record: Mapping[str, object]) -> str:
    lines = []
    for key, value in record.items():
        if "=" in key or "\n" in key:
            raise ValueError(f"bad sidecar key {key!r}")
        lines.append(f"{key}={_value_text(value)}")
    return "\n".join(lines) + "\n"


def parse_sidecar(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for number, line in _lines(text):
        if line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ParseError(number, "sidecar lines must be 'key=value'")
        out[key.strip()] = value.strip()
    return out


# -- 3-d matching ----------------------------------------------------------------

def parse_3dm(text: str) -> ThreeDMInstance:
    header = None
    triples: list[tuple[int, int, int]] = []
    for number, line in _lines(text):
        if line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if len(tokens) != 4 or tokens[1] != "3dm":
                raise ParseError(number, "header must be 'p 3dm <n> <m>'")
            header = (_int(tokens[2], number, "n"), _int(tokens[3], number, "m"), number)
        elif tokens[0] == "m":
            if header is None:
                raise ParseError(number, "triple before the 'p 3dm' header")
            if len(tokens) != 4:
                raise ParseError(number, "triple line must be 'm <i> <j> <k>'")
            triple = tuple(_int(t, number, "index") for t in tokens[1:])
            if any(not 1 <= i <= header[0] for i in triple):
                raise ParseError(number, f"index outside 1..{header[0]}")
            triples.append(triple)
        else:
            raise ParseError(number, f"unknown line type {tokens[0]!r}")
    if header is None:
        raise ParseError(None, "missing 'p 3dm <n> <m>' header")
    if len(triples) != header[1]:
        raise ParseError(header[2], f"header declares {header[1]} triples but {len(triples)} follow")
    try:
        return ThreeDMInstance(header[0], tuple(triples))
    except HypothesisError as exc:
        raise ParseError(None, str(exc)) from None


def serialize_3dm(inst: ThreeDMInstance) -> str:
    lines = [f"p 3dm {inst.n} {inst.m}"] + [f"m {i} {j} {k}" for i, j, k in inst.triples]
    return "\n".join(lines) + "\n"


# -- grid ----------------------------------------------------------------------

GRID_COLUMNS = ("x", "y", "tag", "citation")


def grid_tsv(rows: Iterable[tuple[Fraction, Fraction, str, str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter="\t", lineterminator="\n")
    writer.writerow(GRID_COLUMNS)
    for x, y, tag, citation in rows:
        writer.writerow((fmt(x), fmt(y), tag, citation))
    return buf.getvalue()


def parse_grid_tsv(text: str) -> list[tuple[Fraction, Fraction, str, str]]:
    reader = csv.reader(io.StringIO(text), delimiter="\t")
    header = next(reader, None)
    if tuple(header or ()) != GRID_COLUMNS:
        raise ParseError(1, "grid header must be x, y, tag, citation")
    return [(Q(x), Q(y), tag, cit) for x, y, tag, cit in reader]
