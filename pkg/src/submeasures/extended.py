"""Exact nonnegative rationals extended by a distinguished infinity.

Values of a submeasure are either a :class:`fractions.Fraction` (or an
``int``, which compares and adds like one) or the singleton :data:`INF`.
``INF`` is a proper symbol, never a large number, so comparisons and
sums stay exact.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "INF",
    "Infinity",
    "ExtendedRational",
    "as_ext",
    "is_finite",
    "parse_ext",
    "format_ext",
    "format_plain",
    "approx",
]


class Infinity:
    """The point at infinity of ``[0, inf]``. Use the :data:`INF` singleton."""

    _instance: Infinity | None = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (Infinity, ())

    def __hash__(self):
        return hash("submeasures.INF")

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        _check_comparable(other)
        return False

    def __le__(self, other):
        _check_comparable(other)
        return other is self

    def __gt__(self, other):
        _check_comparable(other)
        return other is not self

    def __ge__(self, other):
        _check_comparable(other)
        return True

    def __add__(self, other):
        _check_comparable(other)
        if other is not self and other < 0:
            raise ValueError("negative summand with INF")
        return self

    __radd__ = __add__

    def __mul__(self, other):
        _check_comparable(other)
        if other is self or other > 0:
            return self
        raise ValueError(f"INF * {other} is undefined here")

    __rmul__ = __mul__

    def __truediv__(self, other):
        _check_comparable(other)
        if other is self:
            raise ValueError("INF / INF is undefined")
        if other > 0:
            return self
        raise ValueError(f"INF / {other} is undefined here")

    def __float__(self):
        return float("inf")


INF = Infinity()

ExtendedRational = Union[Fraction, int, Infinity]


def _check_comparable(other):
    if other is INF or isinstance(other, Rational):
        return
    if isinstance(other, float):
        raise TypeError("floating point values are not allowed")
    raise TypeError(f"cannot compare INF with {type(other).__name__}")


def as_ext(value) -> ExtendedRational:
    """Normalize ``value`` to ``Fraction`` or ``INF``.

    Accepts ints, Fractions, ``INF`` and strings understood by
    :func:`parse_ext`. Floats are rejected.
    """
    if value is INF:
        return INF
    if isinstance(value, bool):
        raise TypeError("bool is not a submeasure value")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_ext(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"not an exact value: {value!r}")


def is_finite(value: ExtendedRational) -> bool:
    return value is not INF


def parse_ext(text: str) -> ExtendedRational:
    """Parse ``"p/q"``, ``"p"`` or ``"inf"``. Decimal points are refused."""
    text = text.strip()
    if text.lower() in ("inf", "infinity", "∞"):
        return INF
    if any(ch in text for ch in ".eE"):
        raise ValueError(f"decimal literals are not exact rationals: {text!r}")
    return Fraction(text)


def format_ext(value: ExtendedRational) -> str:
    """Canonical ``"p/q"`` form (denominator always shown) or ``"inf"``."""
    if value is INF:
        return "inf"
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def format_plain(value: ExtendedRational) -> str:
    """Shortest exact form: ``"2"``, ``"3/2"`` or ``"inf"``."""
    if value is INF:
        return "inf"
    return str(Fraction(value))


def approx(value: ExtendedRational, digits: int = 12) -> str:
    """Decimal rendering for human eyes only (``--approx``)."""
    if value is INF:
        return "inf"
    value = Fraction(value)
    sign = "-" if value < 0 else ""
    value = abs(value)
    whole, rest = divmod(value.numerator, value.denominator)
    frac = (rest * 10**digits) // value.denominator
    return f"{sign}{whole}.{frac:0{digits}d}"
