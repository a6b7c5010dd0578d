"""Exact rational scalars.

``fractions.Fraction`` already keeps values in lowest terms with a positive
denominator, so it is used directly; this module only adds parsing and
canonical formatting for the text formats.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from typing import Union

# Exact results routinely run to tens of thousands of digits.
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

Rational = Fraction
RationalLike = Union[Fraction, int, str]


def Q(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` / ``"-7"`` strings to a Fraction.

    Floats are rejected: every value must be exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def fmt(value: Fraction | int) -> str:
    """Canonical text form: ``"p/q"`` or ``"p"`` when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def pow0(base: Fraction | int, exponent: int) -> Fraction:
    """``base**exponent`` with ``0**0 == 1``; negative exponents of 0 raise."""
    if exponent == 0:
        return Fraction(1)
    return Fraction(base) ** exponent


def approx(value: Fraction, digits: int = 6) -> str:
    """Short decimal display of a rational, for annotated human output only."""
    value = Fraction(value)
    if value == 0:
        return "0"
    sign = "-" if value < 0 else ""
    value = abs(value)
    # Scale by powers of ten without going through float, which overflows on huge values.
    exp10 = len(str(value.numerator)) - len(str(value.denominator))
    scaled = value / Fraction(10) ** exp10
    while scaled >= 10:
        scaled /= 10
        exp10 += 1
    while scaled < 1:
        scaled *= 10
        exp10 -= 1
    mantissa = round(scaled * 10 ** (digits - 1))
    if mantissa >= 10**digits:
        mantissa //= 10
        exp10 += 1
    text = str(mantissa)
    if -4 <= exp10 < digits:
        point = exp10 + 1
        if point <= 0:
            body = "0." + "0" * (-point) + text
        else:
            body = text[:point] + ("." + text[point:] if text[point:] else "")
        body = body.rstrip("0").rstrip(".") if "." in body else body
        return sign + body
    body = text[0] + ("." + text[1:].rstrip("0") if text[1:].rstrip("0") else "")
    return f"{sign}{body}e{exp10:+d}"
