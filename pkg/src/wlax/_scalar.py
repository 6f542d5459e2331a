"""Exact rational scalars.

gmpy2's mpq is roughly ten times faster than fractions.Fraction for the
small rationals that dominate straightening, so it is used when present.
"""
from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

ZERO = Q(0)
ONE = Q(1)
HALF = Q(1, 2)


def to_q(x):
    """Coerce int, Fraction, mpq or a 'p/q' string to the scalar type."""
    if isinstance(x, str):
        f = Fraction(x.strip())
        return Q(f.numerator, f.denominator)
    if isinstance(x, Fraction):
        return Q(x.numerator, x.denominator)
    return Q(x)


def fmt_q(x):
    x = Q(x)
    num, den = int(x.numerator), int(x.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def fmt_half(k2):
    """Render a doubled half-integer k2 as 'k' or 'k/2'."""
    return str(k2 // 2) if k2 % 2 == 0 else f"{k2}/2"
