"""Scalar arithmetic modes.

Three modes are supported: exact rationals (arbitrary precision, no
rounding), approximate reals and approximate complexes.  Approximate
comparisons are relative: |a - b| <= tolerance * max(1, scale).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

RATIONAL = "rational"
REAL = "real"
COMPLEX = "complex"

DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ScalarMode:
    kind: str
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if self.kind not in (RATIONAL, REAL, COMPLEX):
            raise ValueError("unknown scalar mode %r" % (self.kind,))
        if not (self.tolerance >= 0.0):
            raise ValueError("tolerance must be nonnegative")

    @property
    def exact(self) -> bool:
        return self.kind == RATIONAL

    def coerce(self, value):
        """Convert ``value`` to this mode's scalar type."""
        if self.kind == RATIONAL:
            if isinstance(value, Fraction):
                return value
            if isinstance(value, int):
                return Fraction(value)
            if isinstance(value, str):
                return parse_rational(value)
            raise TypeError("cannot use %r as an exact rational" % (value,))
        if self.kind == REAL:
            if isinstance(value, complex):
                raise TypeError("complex value in real mode")
            return float(value)
        return complex(value)

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def is_zero(self, value, scale=1.0) -> bool:
        if self.exact:
            return value == 0
        return abs(value) <= self.tolerance * max(1.0, float(scale))

    def close(self, a, b, scale=1.0) -> bool:
        if self.exact:
            return a == b
        s = max(float(scale), abs(a), abs(b))
        return abs(a - b) <= self.tolerance * max(1.0, s)


RATIONAL_MODE = ScalarMode(RATIONAL, 0.0)
REAL_MODE = ScalarMode(REAL)
COMPLEX_MODE = ScalarMode(COMPLEX)


def parse_rational(text: str, strict: bool = False) -> Fraction:
    """Parse "p" or "p/q" into a Fraction.

    With ``strict=True`` (file loading) require q > 0 and gcd(|p|, q) = 1,
    so unnormalized encodings like "2/4" or "1/-2" are rejected.
    """
    text = text.strip()
    if "/" in text:
        num_s, den_s = text.split("/", 1)
        p = int(num_s)
        q = int(den_s)
        if q == 0:
            raise ValueError("zero denominator in %r" % (text,))
        if strict:
            if q <= 0:
                raise ValueError("denominator must be positive in %r" % (text,))
            if math.gcd(abs(p), q) != 1:
                raise ValueError("fraction %r is not in lowest terms" % (text,))
        return Fraction(p, q)
    return Fraction(int(text))


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


def format_real(value: float) -> str:
    """Fixed 17-significant-digit rendering (round-trip safe for float64)."""
    return format(float(value), ".17g")
