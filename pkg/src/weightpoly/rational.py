"""Rational scalars: coercion, canonical "p/q" strings and small vector helpers."""

from __future__ import annotations

import decimal
from fractions import Fraction
from typing import Iterable, Sequence, Union

RationalLike = Union[Fraction, int, str]

__all__ = [
    "Fraction",
    "RationalLike",
    "as_fraction",
    "fmt",
    "fmt_vector",
    "parse_vector",
    "l1_distance",
    "linf_distance",
    "decimal_str",
]


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a ``Fraction``, refusing floats.

    Floats are rejected outright because every quantity in this package is
    meant to be exact; ``"0.35"`` as a string is fine, ``0.35`` is not.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, float):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def fmt(x: Fraction) -> str:
    """Canonical string form, always with an explicit denominator (``"2/1"``)."""
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"


def fmt_vector(xs: Iterable[Fraction]) -> list[str]:
    return [fmt(x) for x in xs]


def parse_vector(items: Iterable[RationalLike]) -> tuple[Fraction, ...]:
    return tuple(as_fraction(x) for x in items)


def l1_distance(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise ValueError("vectors differ in length")
    return sum((abs(x - y) for x, y in zip(a, b)), Fraction(0))


def linf_distance(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise ValueError("vectors differ in length")
    return max((abs(x - y) for x, y in zip(a, b)), default=Fraction(0))


def decimal_str(x: Fraction, digits: int = 20) -> str:
    """Display-only decimal rendering with ``digits`` significant digits."""
    x = as_fraction(x)
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        value = decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)
    return format(value, "f")
