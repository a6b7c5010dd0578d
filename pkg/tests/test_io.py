from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import multigraphs, small_rationals

from tutteplane.io import (
    GraphFile,
    ParseError,
    grid_tsv,
    parse_3dm,
    parse_graph,
    parse_grid_tsv,
    parse_sidecar,
    serialize_3dm,
    serialize_graph,
    serialize_sidecar,
)
from tutteplane.reductions.threedm import ThreeDMInstance


@st.composite
def graph_files(draw):
    g = draw(multigraphs())
    weighted = draw(st.booleans()) and g.m > 0
    weights = tuple(draw(st.lists(small_rationals, min_size=g.m, max_size=g.m))) if weighted else None
    terminals = tuple(draw(st.lists(st.integers(min_value=1, max_value=g.n), max_size=3))) if g.n else ()
    comments = tuple(draw(st.lists(st.sampled_from(["note", "gadget", ""]), max_size=2)))
    return GraphFile(g, weights, terminals, comments)


@given(graph_files())
def test_graph_round_trip(gf):
    text = serialize_graph(gf)
    parsed = parse_graph(text)
    assert parsed == gf
    assert serialize_graph(parsed) == text


def test_canonical_file_is_byte_stable(data_dir):
    for path in sorted(data_dir.glob("*.graph")):
        text = path.read_text()
        assert serialize_graph(parse_graph(text)) == text, path.name


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("p tutte 2 1\ne 1 3\n", 2, "outside 1..2"),
        ("p tutte 2 2\ne 1 2\n", 1, "declares 2 edges"),
        ("e 1 2\n", 1, "before the 'p tutte' header"),
        ("p tutte 2 1\ne 1 2 x\n", 2, "exact rational"),
        ("p tutte 2 1\nz 1\n", 2, "unknown line type"),
        ("p tutte 2 1\n\n# c\ne 1 two\n", 4, "must be an integer"),
        ("p tutte 2 1\np tutte 2 1\n", 2, "duplicate header"),
        ("p tutte 2 1\ne 1 2\nt 5\n", 3, "terminal 5"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")
    assert fragment in str(info.value)


def test_mixed_weights_are_rejected():
    with pytest.raises(ParseError, match="every edge"):
        parse_graph("p tutte 2 2\ne 1 2 3\ne 1 2\n")


def test_missing_header():
    with pytest.raises(ParseError, match="missing"):
        parse_graph("# only a comment\n")


def test_weighted_view():
    gf = parse_graph("p tutte 2 1\ne 1 2 -3/4\n")
    assert gf.weighted().weights == (Fraction(-3, 4),)
    unweighted = parse_graph("p tutte 2 1\ne 1 2\n")
    with pytest.raises(ValueError):
        unweighted.weighted()
    assert unweighted.weighted(Fraction(2)).weights == (Fraction(2),)


@given(st.dictionaries(st.from_regex(r"[a-z][a-z0-9_]{0,6}", fullmatch=True), small_rationals, max_size=6))
def test_sidecar_round_trip(record):
    parsed = parse_sidecar(serialize_sidecar(record))
    assert {k: Fraction(v) for k, v in parsed.items()} == record


def test_sidecar_errors():
    with pytest.raises(ParseError) as info:
        parse_sidecar("a=1\nbroken\n")
    assert info.value.line == 2
    with pytest.raises(ValueError):
        serialize_sidecar({"a=b": 1})


def test_3dm_round_trip_and_errors():
    inst = ThreeDMInstance(2, ((1, 1, 1), (2, 2, 2)))
    assert parse_3dm(serialize_3dm(inst)) == inst
    with pytest.raises(ParseError) as info:
        parse_3dm("p 3dm 2 1\nm 1 3 1\n")
    assert info.value.line == 2
    with pytest.raises(ParseError, match="declares 2 triples"):
        parse_3dm("p 3dm 2 2\nm 1 1 1\n")


def test_grid_round_trip():
    rows = [(Fraction(-1, 4), Fraction(2), "UNKNOWN", "none"), (Fraction(1), Fraction(1), "FP_EXACT", "special-point")]
    text = grid_tsv(rows)
    assert text.splitlines()[0] == "x\ty\ttag\tcitation"
    assert parse_grid_tsv(text) == rows
    with pytest.raises(ParseError):
        parse_grid_tsv("a\tb\n")
