"""Conversions between user-facing numbers and exact rationals."""

from __future__ import annotations

import numbers
from decimal import Decimal, InvalidOperation
from fractions import Fraction

# Denominator bound used when float results (LP weights, refined roots)
# re-enter exact arithmetic.
FLOAT_DENOMINATOR = 10**12


def as_fraction(value) -> Fraction:
    """Convert ``value`` to an exact Fraction.

    Accepts ints, Fractions, Decimals, strings such as ``"3"``, ``"-1/4"``
    or ``"0.125"``, and floats (converted exactly, bit for bit).
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, numbers.Real):
        return Fraction(float(value))
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty number string")
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                return Fraction(int(num.strip()), int(den.strip()))
            return Fraction(Decimal(text))
        except (ValueError, ZeroDivisionError, InvalidOperation) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def from_float(x: float, max_denominator: int = FLOAT_DENOMINATOR) -> Fraction:
    """Rationalize a float with a bounded denominator."""
    return Fraction(x).limit_denominator(max_denominator)


def format_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
