"""Exact rational parsing and formatting.

Weights are kept as :class:`fractions.Fraction` end to end. Decimal literals
are refused so that ``0.1`` can never sneak in as a binary approximation.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"n"`` or an integer into a Fraction.

    Raises:
        ValueError: for decimals, floats, bools, zero denominators or junk.
    """
    if type(text) is Fraction:
        return text
    if type(text) is int:
        return Fraction(text)
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, Rational):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational literal: {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational literal (use p/q or an integer): {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def exact_sum(xs) -> Fraction:
    """Exact sum of Fractions over a common denominator (one normalization)."""
    xs = [x if type(x) is Fraction else Fraction(x) for x in xs]
    if not xs:
        return Fraction(0)
    den = math.lcm(*(x.denominator for x in xs))
    return Fraction(sum(x.numerator * (den // x.denominator) for x in xs), den)
