"""Exact rational parsing and formatting for JSON documents.

All numeric payloads travel as strings "p/q" (or "p" when the denominator
is 1) so that documents round-trip exactly; floats never appear.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError


def parse_rational(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise InputError(f"rational must be a string like '2/3', got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse rational {text!r}: {exc}") from None


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
