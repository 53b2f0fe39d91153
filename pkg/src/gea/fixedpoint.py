"""Exact fixed-point arithmetic for occurrence weights.

Weights and the recurrence base are stored as plain integers scaled by
``SCALE`` (10**6). Sums of weights are then exact, and tests like "is this
weight exactly equal to the recurrence base" need no tolerance.
"""
from __future__ import annotations

import re
from fractions import Fraction

SCALE = 10**6

_DECIMAL_RE = re.compile(r"[+-]?(?:\d+(?:\.\d+)?|\.\d+)\Z")


def from_number(value) -> int:
    """Convert a number to scaled units, rounding to the nearest 1e-6.

    Accepts int, float, Fraction, Decimal, or a numeric string. Values that
    need more than six decimal places are rounded half away from zero.
    """
    try:
        frac = Fraction(value)
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        raise ValueError(f"cannot interpret {value!r} as a number") from exc
    num = frac.numerator * SCALE
    den = frac.denominator
    q, rem = divmod(abs(num), den)
    if 2 * rem >= den:
        q += 1
    return q if num >= 0 else -q


def from_decimal(text: str) -> int:
    """Parse a plain decimal literal ('3.8', '0.5', '2') into scaled units."""
    t = text.strip()
    if not _DECIMAL_RE.match(t):
        raise ValueError(f"not a decimal literal: {text!r}")
    return from_number(Fraction(t))


def to_float(scaled: int) -> float:
    return scaled / SCALE


def to_fraction(scaled: int) -> Fraction:
    return Fraction(scaled, SCALE)


def is_integral(scaled: int) -> bool:
    return scaled % SCALE == 0


def format_decimal(scaled: int) -> str:
    """Canonical decimal string: trailing zeros trimmed, at least one
    fractional digit kept (1000000 -> '1.0', 3800000 -> '3.8')."""
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), SCALE)
    digits = f"{frac:06d}".rstrip("0") or "0"
    return f"{sign}{whole}.{digits}"
