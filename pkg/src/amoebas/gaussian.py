"""Exact Gaussian rationals and extended-range logarithms of their magnitudes.

Coefficient arithmetic throughout the package is exact: a Gaussian rational
is a complex number ``a + b*i`` whose real and imaginary parts are
arbitrary-precision fractions. Canonical form (coprime numerator and
denominator, positive denominator) is inherited from ``fractions.Fraction``.

Log magnitudes need care. Squared magnitudes of cyclic-resultant
coefficients reach 10^1600 and beyond, far outside float range, so the
logarithm of an exact fraction is taken on a (mantissa, binary exponent)
split of the integers involved and never by converting a big integer to
float. A :class:`LogMagnitude` keeps that split.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

LN2 = math.log(2.0)

_Rat = int | Fraction


class GaussianRational:
    """Exact complex number with rational real and imaginary parts.

    Instances are treated as immutable; all arithmetic returns new objects.
    """

    __slots__ = ("re", "im")

    re: Fraction
    im: Fraction

    def __init__(self, re: _Rat = 0, im: _Rat = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, value: "GaussianRational | int | Fraction") -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        raise TypeError(f"cannot interpret {type(value).__name__} as a Gaussian rational")

    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    @property
    def is_real(self) -> bool:
        return not self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs_squared(self) -> Fraction:
        """|a + b*i|^2 = a^2 + b^2, exact."""
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re + other, self.im)
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re - other, self.im)
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        if isinstance(other, GaussianRational):
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return GaussianRational(self.re / other, self.im / other)
        if isinstance(other, GaussianRational):
            d = other.abs_squared()
            if not d:
                raise ZeroDivisionError("division by zero")
            return GaussianRational(
                (self.re * other.re + self.im * other.im) / d,
                (self.im * other.re - self.re * other.im) / d,
            )
        return NotImplemented

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        # match int/Fraction hashing when purely real so mixed containers behave
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return f"GaussianRational({self.re})"
        return f"GaussianRational({self.re}, {self.im})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)


@dataclass(frozen=True)
class LogMagnitude:
    """Natural logarithm held as ``mantissa_log + exp2 * ln 2``.

    The split keeps the computation exact-integer based; the combined value
    of any quantity this package meets fits comfortably in a float, only the
    exponentiated magnitude does not.
    """

    mantissa_log: float
    exp2: int

    @property
    def value(self) -> float:
        return self.mantissa_log + self.exp2 * LN2

    def __float__(self) -> float:
        return self.value

    def __add__(self, other: "LogMagnitude") -> "LogMagnitude":
        return LogMagnitude(self.mantissa_log + other.mantissa_log, self.exp2 + other.exp2)

    def __neg__(self) -> "LogMagnitude":
        return LogMagnitude(-self.mantissa_log, -self.exp2)

    def __sub__(self, other: "LogMagnitude") -> "LogMagnitude":
        return LogMagnitude(self.mantissa_log - other.mantissa_log, self.exp2 - other.exp2)


def _ln_positive_ratio(num: int, den: int) -> tuple[float, int]:
    """ln(num/den) for positive integers of any size, as (mantissa_log, exp2).

    Strategy: split off the binary exponent so the mantissa ratio sits in
    [1/2, 2), except near 1 where log1p on the exactly-rounded difference
    quotient avoids cancellation. Big-int true division in CPython is
    correctly rounded, so every float that enters a log call carries at most
    half an ulp of input error; the relative error of the result stays below
    2^-48, well under the 2^-40 budget the dominance tests assume.
    """
    if num <= 0 or den <= 0:
        raise ValueError("logarithm of a non-positive ratio")
    if num == den:
        return 0.0, 0
    e = num.bit_length() - den.bit_length()
    if -1 <= e <= 1 and 2 * abs(num - den) <= den:
        # ratio within [1/2, 3/2]: the log itself may be tiny
        return math.log1p((num - den) / den), 0
    if e >= 0:
        m = num / (den << e)
    else:
        m = (num << -e) / den
    return math.log(m), e


def ln_fraction(value: Fraction) -> LogMagnitude:
    """Extended-range natural log of a positive rational."""
    mant, exp2 = _ln_positive_ratio(value.numerator, value.denominator)
    return LogMagnitude(mant, exp2)


def half_ln_fraction(value: Fraction) -> LogMagnitude:
    """``ln(value) / 2`` of a positive rational, keeping exp2 integral."""
    mant, exp2 = _ln_positive_ratio(value.numerator, value.denominator)
    if exp2 % 2:
        return LogMagnitude((mant + LN2) * 0.5, (exp2 - 1) // 2)
    return LogMagnitude(mant * 0.5, exp2 // 2)


def log_abs(coeff: GaussianRational) -> LogMagnitude:
    """ln |coeff| of a nonzero Gaussian rational, via the exact |coeff|^2."""
    if coeff.is_zero:
        raise ValueError("log magnitude of zero")
    return half_ln_fraction(coeff.abs_squared())
