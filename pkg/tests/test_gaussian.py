import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from amoebas.gaussian import (
    GaussianRational,
    LogMagnitude,
    half_ln_fraction,
    ln_fraction,
    log_abs,
)
from conftest import coefficients, nonzero_coefficients, small_fractions


def test_construction_and_coercion():
    a = GaussianRational(Fraction(1, 2), -3)
    assert a.re == Fraction(1, 2) and a.im == -3
    assert GaussianRational.coerce(5) == GaussianRational(5)
    assert GaussianRational.coerce(Fraction(2, 7)).re == Fraction(2, 7)
    same = GaussianRational(1, 1)
    assert GaussianRational.coerce(same) is same
    with pytest.raises(TypeError):
        GaussianRational.coerce(1.5)


def test_arithmetic_identities():
    a = GaussianRational(2, 3)
    b = GaussianRational(Fraction(-1, 2), 1)
    assert a + b == GaussianRational(Fraction(3, 2), 4)
    assert a - a == GaussianRational(0)
    assert a * b == GaussianRational(2 * Fraction(-1, 2) - 3, 2 + 3 * Fraction(-1, 2))
    assert (a / b) * b == a
    assert 1 + a == a + 1
    assert 2 * a == a + a
    assert -a + a == GaussianRational(0)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / GaussianRational(0)
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / 0


def test_equality_and_hash_with_rationals():
    assert GaussianRational(3) == 3
    assert GaussianRational(Fraction(1, 2)) == Fraction(1, 2)
    assert hash(GaussianRational(3)) == hash(3)
    assert GaussianRational(3, 1) != 3
    d = {GaussianRational(2): "a"}
    assert d[2] == "a"


@given(coefficients, coefficients)
def test_conjugate_multiplication_gives_abs_squared(a, b):
    assert (a * a.conjugate()).re == a.abs_squared()
    assert (a * a.conjugate()).im == 0
    assert (a * b).abs_squared() == a.abs_squared() * b.abs_squared()


@given(nonzero_coefficients)
def test_log_abs_matches_high_precision(c):
    got = log_abs(c).value
    with mpmath.workdps(60):
        sq = c.abs_squared()
        want = float(mpmath.log(mpmath.sqrt(
            mpmath.mpf(sq.numerator) / mpmath.mpf(sq.denominator)
        )))
    assert got == pytest.approx(want, abs=1e-13, rel=1e-13)


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_ln_fraction_accuracy(num, den):
    got = ln_fraction(Fraction(num, den)).value
    with mpmath.workdps(60):
        want = float(mpmath.log(mpmath.mpf(num) / mpmath.mpf(den)))
    assert got == pytest.approx(want, abs=1e-13, rel=1e-13)


def test_ln_fraction_near_one_keeps_relative_accuracy():
    # the log is ~1e-9 here; a naive float(num/den) would lose most digits
    v = Fraction(10**9 + 1, 10**9)
    got = ln_fraction(v).value
    with mpmath.workdps(60):
        want = float(mpmath.log(mpmath.mpf(10**9 + 1) / mpmath.mpf(10**9)))
    assert got == pytest.approx(want, rel=1e-12)


def test_ln_fraction_huge_values():
    v = Fraction(3**2000, 2**1500)
    got = ln_fraction(v).value
    want = 2000 * math.log(3) - 1500 * math.log(2)
    assert got == pytest.approx(want, rel=1e-14)
    with pytest.raises(ValueError):
        ln_fraction(Fraction(0))


@given(st.integers(1, 10**9), st.integers(1, 10**9))
def test_half_ln_fraction_is_half(num, den):
    v = Fraction(num, den)
    assert half_ln_fraction(v).value == pytest.approx(
        ln_fraction(v).value / 2, abs=1e-13, rel=1e-13
    )


def test_half_ln_odd_exponent_stays_integral():
    # exp2 must remain an integer even when the raw binary exponent is odd
    lm = half_ln_fraction(Fraction(8))
    assert isinstance(lm.exp2, int)
    assert lm.value == pytest.approx(1.5 * math.log(2), rel=1e-15)


def test_log_magnitude_arithmetic():
    a = LogMagnitude(0.25, 3)
    b = LogMagnitude(-0.5, 1)
    assert (a + b).value == pytest.approx(a.value + b.value)
    assert (a - b).value == pytest.approx(a.value - b.value)
    assert (-a).value == -a.value
    assert float(a) == a.value


def test_log_abs_of_zero_rejected():
    with pytest.raises(ValueError):
        log_abs(GaussianRational(0))


@given(small_fractions.filter(bool))
def test_log_abs_real_case(q):
    assert log_abs(GaussianRational(q)).value == pytest.approx(
        math.log(abs(float(q))), rel=1e-12, abs=1e-12
    )
