"""Exact/float scalar helpers."""

import math
from fractions import Fraction
from numbers import Rational

__all__ = ["to_number", "is_exact", "total", "format_number", "falling_factorial"]


def to_number(x, exact=True):
    """Coerce ``x`` to :class:`~fractions.Fraction` (exact) or ``float``.

    Strings like ``"3/4"`` are accepted in both modes.  In exact mode a float
    is only accepted when it is an integer, since anything else has already
    lost precision.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, str):
        x = Fraction(x.strip())
    if not exact:
        return float(x)
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, float):
        if x.is_integer():
            return Fraction(int(x))
        raise TypeError(f"exact mode requires rational inputs, got float {x!r}")
    raise TypeError(f"cannot interpret {x!r} as a number")


def is_exact(x):
    return isinstance(x, Rational)


def total(terms):
    """Sum ``terms`` exactly, or with compensated summation once a float appears."""
    terms = list(terms)
    if all(isinstance(t, Rational) for t in terms):
        return sum(terms, Fraction(0))
    return math.fsum(float(t) for t in terms)


def format_number(x):
    """``"p/q"`` (or ``"p"``) for rationals, ``repr`` for floats."""
    if isinstance(x, Rational):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def falling_factorial(n, k):
    out = 1
    for j in range(k):
        out *= n - j
    return out
