"""Exact rational scalars and their serialized forms.

Every value in this package is an exact rational: reduced, arbitrary
precision, positive denominator. The backing type is ``gmpy2.mpq`` when
gmpy2 is importable (a C implementation, roughly 5x faster here) and
``fractions.Fraction`` otherwise; the two interoperate and hash identically,
so which one is active is invisible to callers. Floats are rejected at the
API boundary: knot existence is an equality question (is a slope change
zero, does a root coincide with a breakpoint) and binary rounding would make
the answers depend on how the inputs happened to be written.
"""

from __future__ import annotations

import decimal
from fractions import Fraction

try:
    from gmpy2 import mpq as _make_rational

    Rational = type(_make_rational(0))
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _make_rational = Fraction
    Rational = Fraction

ZERO = _make_rational(0)
ONE = _make_rational(1)

# accepted by as_rational everywhere a rational is expected
RationalLike = int | str | Fraction | Rational


def as_rational(value: int | str | Fraction | Rational) -> Rational:
    """Coerce an int, rational, or numeric string to the exact backend type.

    Floats raise ``TypeError``: callers must decide how to rationalize them.
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, float):
        raise TypeError(
            f"refusing float {value!r}; pass a rational, int, or 'num/den' string"
        )
    if isinstance(value, (int, Fraction)):
        return _make_rational(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def parse_rational(text: str) -> Rational:
    """Parse a rational written as ``"num/den"`` or ``"num"``."""
    try:
        return _make_rational(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid rational {text!r}") from exc


def format_rational(value: Rational | Fraction) -> str:
    """Render reduced ``"num/den"``, omitting the denominator when it is 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def decimal_str(value: Rational | Fraction, significant_digits: int = 20) -> str:
    """Decimal rendering for plotting; the rational string stays authoritative."""
    with decimal.localcontext() as ctx:
        ctx.prec = significant_digits
        return str(
            decimal.Decimal(int(value.numerator)) / decimal.Decimal(int(value.denominator))
        )
