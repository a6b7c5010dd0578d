from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tutteplane.rational import Q, approx, fmt, pow0


def test_parsing():
    assert Q("-1/5") == Fraction(-1, 5)
    assert Q(3) == 3
    with pytest.raises((ValueError, ZeroDivisionError)):
        Q("1/0")


@given(st.fractions())
def test_fmt_round_trips(value):
    assert Q(fmt(value)) == value


def test_fmt_integers_have_no_denominator():
    assert fmt(Fraction(6, 3)) == "2"
    assert fmt(Fraction(-1, 4)) == "-1/4"


def test_pow0():
    assert pow0(0, 0) == 1
    assert pow0(Fraction(1, 2), 3) == Fraction(1, 8)


def test_approx_handles_huge_values():
    assert approx(Fraction(-10**400, 3)).startswith("-3.33333")
    assert "e" in approx(Fraction(10**400, 3))
    assert approx(Fraction(0)) == "0"
    assert approx(Fraction(-1031, 10)) == "-103.1"
