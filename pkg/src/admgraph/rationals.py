"""Exact rational scalars.

All arithmetic in this package is exact: values are ``fractions.Fraction``
throughout, floats are rejected at every boundary.  ``INFINITY`` is the one
extended value, arising only as the cross-edge resistance of a bridge.
"""

from __future__ import annotations

import re
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


class Infinity:
    """Positive infinity for extended-rational results (bridge resistances)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("admgraph.INFINITY")


INFINITY = Infinity()


def is_infinite(value) -> bool:
    return value is INFINITY


def as_fraction(value) -> Fraction:
    """Coerce an int, Fraction, or rational string to Fraction.

    Floats are rejected: they would silently break the exactness contract.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def parse_rational(text: str) -> Fraction:
    """Parse "p", "-p", or "p/q" with q > 0.  Anything else is an error."""
    m = _RATIONAL_RE.match(text.strip())
    if not m:
        raise ValueError(f"bad rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"bad rational literal (zero denominator): {text!r}")
    return Fraction(num, den)


def format_rational(value: Fraction) -> str:
    """Canonical string form: "p" for integers, "p/q" otherwise."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
