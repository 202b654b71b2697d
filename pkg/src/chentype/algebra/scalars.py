"""Exact rational scalars.

All coefficients in the kernel are ``gmpy2.mpq`` values.  ``mpq`` keeps the
fraction reduced with a positive denominator, and zero is ``0/1``.
"""

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq, mpz

ZERO = mpq(0)
ONE = mpq(1)


def scalar(x) -> mpq:
    """Coerce ``x`` (int, Fraction, mpq or a ``"p/q"`` string) to ``mpq``."""
    if isinstance(x, type(ONE)):
        return x
    if isinstance(x, (int, type(mpz(0)))):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        text = x.strip()
        if "/" in text:
            p, q = text.split("/", 1)
            if int(q) == 0:
                raise ZeroDivisionError(f"zero denominator in {x!r}")
            return mpq(int(p), int(q))
        return mpq(int(text))
    if isinstance(x, Rational):
        return mpq(int(x.numerator), int(x.denominator))
    raise TypeError(f"not an exact rational: {x!r}")


def to_fraction(x) -> Fraction:
    x = scalar(x)
    return Fraction(int(x.numerator), int(x.denominator))


def format_scalar(x) -> str:
    x = scalar(x)
    if x.denominator == 1:
        return str(int(x.numerator))
    return f"{int(x.numerator)}/{int(x.denominator)}"


def is_integer(x) -> bool:
    return scalar(x).denominator == 1
