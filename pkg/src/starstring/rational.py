"""Exact rational scalars and their text form.

The canonical scalar everywhere is :class:`fractions.Fraction`.  Text input
accepts "p/q", plain integers, and decimal strings; decimals are read as
exact decimal fractions ("0.5" -> 1/2).  Output is always "p/q" or "p".
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SchemaError

Rational = Fraction


def parse_rational(text, context="value"):
    """Parse a rational from its string (or int) form, exactly."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise SchemaError(f"{context}: expected rational string, got {type(text).__name__}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{context}: not a rational number: {text!r}") from exc


def format_rational(value):
    """Canonical string form: "p/q", or "p" for integers."""
    return str(Fraction(value))
