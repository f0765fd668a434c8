"""Cyclic resultants of Laurent polynomials.

The cyclic resultant cres(f; r) is the product of f over all n-tuples of
r-th root-of-unity scalings of the variables, a single polynomial whose
coefficients are exact Gaussian rationals. Three independent routes:

* :func:`quick_cyclic_resultant`, for r = 2^k. One doubling step multiplies
  the current product by its sign-flipped twin (terms with an odd multiple
  of the current 2-power in one variable are negated), which is evaluation
  at a root of unity in disguise; k steps per variable replace the 2^k
  factors of the defining product. Cost grows with k, not 2^k.
* :func:`iterated_resultant_baseline`, the defining nested resultants
  Res(f(u * z), u^r - 1), any r >= 1, evaluated by fraction-free
  subresultant elimination of the Sylvester system. Dramatically slower;
  exists to cross-check the quick route term by term.
* :func:`poisson_numeric_oracle`, the defining product evaluated numerically
  at one point in double-range complex arithmetic with magnitudes tracked in
  log form. Validates both exact routes to float accuracy.

Useful invariants: every exponent of cres(f; 2^k) is divisible by 2^k in
every variable; for polynomial (non-Laurent) f the total degree is exactly
2^(k*n) * deg f; cres(f*g) = cres(f) * cres(g).
"""

from __future__ import annotations

import cmath
import itertools
import math
import time

from .gaussian import GaussianRational
from .poly import (
    ExponentVector,
    LaurentPoly,
    _content_reduce,
    _from_int_form,
    _int_form,
    _mul_int,
    exact_div,
    mul,
)

DEFAULT_MAX_TERMS = 10_000_000
ORACLE_MAX_FACTORS = 65_536


class TermBudgetError(RuntimeError):
    """Estimated output size exceeds the configured term budget."""


class BaselineTimeout(RuntimeError):
    """Cooperative deadline expired inside the baseline elimination."""


class Deadline:
    """Wall-clock budget checked at the baseline's inner loops."""

    __slots__ = ("t_end",)

    def __init__(self, seconds: float):
        self.t_end = time.perf_counter() + seconds

    def check(self) -> None:
        if time.perf_counter() > self.t_end:
            raise BaselineTimeout("baseline resultant exceeded its time budget")


def estimate_result_terms(f: LaurentPoly, copies_per_var: int) -> int:
    """Upper bound on the term count of a cyclic resultant.

    The result's support, divided by r in every variable, fits in the box
    whose side along variable i is r^(n-1) times f's exponent range there.
    """
    n = f.nvars
    bound = 1
    for i in range(1, n + 1):
        lo, hi = f.exponent_range(i)
        bound *= (hi - lo) * copies_per_var ** (n - 1) + 1
    return bound


def quick_cyclic_resultant(
    f: LaurentPoly,
    k: int,
    *,
    max_terms: int = DEFAULT_MAX_TERMS,
    var_order: tuple[int, ...] | None = None,
) -> LaurentPoly:
    """cres(f; 2^k) by k flip-and-multiply doubling steps per variable.

    After level l in variable j the running product equals the cyclic
    resultant of f over the 2^l-th roots of unity in variable j alone, so
    its exponents there are multiples of 2^l; the flip of the next level is
    then exactly evaluation at a primitive 2^(l+1)-th root. Variables are
    processed in ``var_order`` (default 1..n); the factors commute, so the
    order does not change the result.
    """
    if f.is_zero:
        raise ValueError("cyclic resultant of the zero polynomial")
    if k < 0:
        raise ValueError("level must be nonnegative")
    if k == 0:
        return f
    n = f.nvars
    order = tuple(var_order) if var_order is not None else tuple(range(1, n + 1))
    if sorted(order) != list(range(1, n + 1)):
        raise ValueError(f"var_order must be a permutation of 1..{n}")
    estimate = estimate_result_terms(f, 2 ** k)
    if estimate > max_terms:
        raise TermBudgetError(
            f"estimated up to {estimate} output terms, over the budget of {max_terms}"
        )

    den, table, all_real = _int_form(f)
    for var in order:
        j = var - 1
        for level in range(1, k + 1):
            mask = (1 << level) - 1
            flipped = {
                e: ((-a, -b) if e[j] & mask else (a, b)) for e, (a, b) in table.items()
            }
            table = _mul_int(table, flipped, all_real, all_real)
            den *= den
            den, table = _content_reduce(den, table)
    return _from_int_form(n, den, table)


# -- baseline: nested resultants against u^r - 1 ------------------------------
#
# Res(A, B) here is the standard Sylvester convention
#   Res(A, B) = lc(A)^deg(B) * prod over roots alpha of A of B(alpha),
# so Res(u^r - 1, A), with the cyclotomic factor first and monic, is exactly
# the product of A over the r-th roots of unity. Negative u-exponents
# (Laurent input) are cleared by multiplying with u^m, which scales the
# product by the m-th power of the product of all r-th roots of unity, a
# known sign.

_UnivPoly = dict[int, LaurentPoly]  # u-degree -> coefficient in the remaining ring


def _udeg(a: _UnivPoly) -> int:
    return max(a)


def _uprune(a: _UnivPoly) -> _UnivPoly:
    return {t: c for t, c in a.items() if not c.is_zero}


def _prem(a: _UnivPoly, b: _UnivPoly, deadline: Deadline | None) -> _UnivPoly:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + rem."""
    deg_a = _udeg(a)
    deg_b = _udeg(b)
    lc_b = b[deg_b]
    monic = _is_one(lc_b)
    rem = dict(a)
    steps = 0
    while rem and (deg_r := max(rem)) >= deg_b:
        if deadline is not None:
            deadline.check()
        lead = rem.pop(deg_r)
        shift = deg_r - deg_b
        scaled = dict(rem) if monic else {t: mul(c, lc_b) for t, c in rem.items()}
        for t, c in b.items():
            if t == deg_b:
                continue
            target = t + shift
            delta = mul(lead, c)
            prev = scaled.get(target)
            scaled[target] = delta.__neg__() if prev is None else prev - delta
        rem = _uprune(scaled)
        steps += 1
    missing = (deg_a - deg_b + 1) - steps
    if missing > 0 and rem and not monic:
        factor = _poly_pow(lc_b, missing)
        rem = {t: mul(c, factor) for t, c in rem.items()}
    return rem


def _poly_pow(p: LaurentPoly, e: int) -> LaurentPoly:
    result = LaurentPoly.constant(p.nvars, 1)
    base = p
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base) if e > 1 else base
        e >>= 1
    return result


def _is_one(p: LaurentPoly) -> bool:
    if len(p.terms) != 1:
        return False
    ((e, c),) = p.terms.items()
    return not any(e) and c == 1


def _resultant_univ(a: _UnivPoly, b: _UnivPoly, nvars: int, deadline: Deadline | None) -> LaurentPoly:
    """Sylvester resultant over the Laurent coefficient ring.

    Fraction-free subresultant remainder sequence (the structured form of
    eliminating the Sylvester matrix without fractions); every division
    below is exact in the coefficient ring.
    """
    one = LaurentPoly.constant(nvars, 1)
    sign = 1
    if _udeg(a) < _udeg(b):
        if _udeg(a) % 2 and _udeg(b) % 2:
            sign = -sign
        a, b = b, a
    if _udeg(b) == 0 and _udeg(a) == 0:
        return one
    g = one
    h = one
    while _udeg(b) > 0:
        if deadline is not None:
            deadline.check()
        deg_a, deg_b = _udeg(a), _udeg(b)
        delta = deg_a - deg_b
        if deg_a % 2 and deg_b % 2:
            sign = -sign
        rem = _prem(a, b, deadline)
        a = b
        if not rem:
            return LaurentPoly(nvars)  # positive-degree common factor
        divisor = mul(g, _poly_pow(h, delta))
        if _is_one(divisor):
            b = rem
        else:
            b = {t: exact_div(c, divisor) for t, c in rem.items()}
        g = a[_udeg(a)]
        if delta == 1:
            h = g
        elif delta > 1:
            h = exact_div(_poly_pow(g, delta), _poly_pow(h, delta - 1))
    deg_a = _udeg(a)
    lead = _poly_pow(b[0], deg_a)
    if deg_a > 1 and not _is_one(h):
        lead = exact_div(lead, _poly_pow(h, deg_a - 1))
    return lead if sign > 0 else lead.__neg__()


def _eliminate_variable(p: LaurentPoly, var: int, r: int, deadline: Deadline | None) -> LaurentPoly:
    """Res_u(p with z_var scaled by u, u^r - 1), u-denominators cleared."""
    n = p.nvars
    j = var - 1
    exps = [e[j] for e in p.terms]
    shift = max(0, -min(exps))

    a: dict[int, dict[ExponentVector, GaussianRational]] = {}
    for e, c in p.terms.items():
        a.setdefault(e[j] + shift, {})[e] = c
    lifted: _UnivPoly = {}
    for t, terms in a.items():
        coeff = LaurentPoly(n)
        coeff.terms.update(terms)
        lifted[t] = coeff

    if _udeg(lifted) == 0:
        return _poly_pow(lifted[0], r)  # variable absent: every factor is p itself

    b: _UnivPoly = {r: LaurentPoly.constant(n, 1), 0: LaurentPoly.constant(n, -1)}
    res = _resultant_univ(b, lifted, n, deadline)
    # clearing u^-shift scaled the product by (prod of all r-th roots)^shift
    if r % 2 == 0 and shift % 2 == 1:
        res = res.__neg__()
    return res


def iterated_resultant_baseline(
    f: LaurentPoly,
    r: int,
    *,
    max_terms: int = DEFAULT_MAX_TERMS,
    timeout: float | None = None,
) -> LaurentPoly:
    """cres(f; r) by the defining nested resultants, one variable at a time.

    General-purpose and exact for any r >= 1, but exponentially slower than
    the quick route as r grows; intended for cross-checks at small r. A
    ``timeout`` in seconds raises :class:`BaselineTimeout` cooperatively.
    """
    if f.is_zero:
        raise ValueError("cyclic resultant of the zero polynomial")
    if r < 1:
        raise ValueError("r must be at least 1")
    estimate = estimate_result_terms(f, r)
    if estimate > max_terms:
        raise TermBudgetError(
            f"estimated up to {estimate} output terms, over the budget of {max_terms}"
        )
    deadline = Deadline(timeout) if timeout is not None else None
    current = f
    for var in range(1, f.nvars + 1):
        current = _eliminate_variable(current, var, r, deadline)
    return current


# -- direct Sylvester determinant, for validating the elimination ------------


def _sylvester_matrix(a: _UnivPoly, b: _UnivPoly, nvars: int) -> list[list[LaurentPoly]]:
    m, n = _udeg(a), _udeg(b)
    size = m + n
    zero = LaurentPoly(nvars)
    rows = []
    for i in range(n):  # n rows of a-coefficients
        row = [zero] * size
        for t, c in a.items():
            row[i + (m - t)] = c
        rows.append(row)
    for i in range(m):  # m rows of b-coefficients
        row = [zero] * size
        for t, c in b.items():
            row[i + (n - t)] = c
        rows.append(row)
    return rows


def _bareiss_det(matrix: list[list[LaurentPoly]], nvars: int) -> LaurentPoly:
    """Fraction-free determinant of a small polynomial matrix."""
    size = len(matrix)
    mat = [row[:] for row in matrix]
    sign = 1
    prev = LaurentPoly.constant(nvars, 1)
    for k in range(size - 1):
        if mat[k][k].is_zero:
            swap = next((i for i in range(k + 1, size) if not mat[i][k].is_zero), None)
            if swap is None:
                return LaurentPoly(nvars)
            mat[k], mat[swap] = mat[swap], mat[k]
            sign = -sign
        pivot = mat[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = mul(mat[i][j], pivot) - mul(mat[i][k], mat[k][j])
                mat[i][j] = num if _is_one(prev) else exact_div(num, prev)
            mat[i][k] = LaurentPoly(nvars)
        prev = pivot
    det = mat[size - 1][size - 1]
    return det if sign > 0 else det.__neg__()


def sylvester_resultant_direct(a: _UnivPoly, b: _UnivPoly, nvars: int) -> LaurentPoly:
    """det of the explicit Sylvester matrix; cross-check for tiny inputs."""
    return _bareiss_det(_sylvester_matrix(a, b, nvars), nvars)


# -- numeric oracle -----------------------------------------------------------


def poisson_numeric_oracle(f: LaurentPoly, r: int, point) -> complex:
    """Defining product of cres(f; r) evaluated at one complex point.

    Magnitudes accumulate in log form, so only the final answer must fit a
    double; overflow is reported, never silently saturated. Factors iterate
    in a fixed row-major order, making the result deterministic.
    """
    if f.is_zero:
        raise ValueError("cyclic resultant of the zero polynomial")
    if r < 1:
        raise ValueError("r must be at least 1")
    n = f.nvars
    if r ** n > ORACLE_MAX_FACTORS:
        raise ValueError(f"{r}^{n} factors exceed the oracle bound of {ORACLE_MAX_FACTORS}")
    values = [complex(z) for z in point]
    if len(values) != n:
        raise ValueError("point dimension mismatch")
    if any(v == 0 for v in values):
        raise ValueError("oracle point must avoid the coordinate hyperplanes")
    try:
        coeffs = [(e, complex(c)) for e, c in f.sorted_terms()]
    except OverflowError as exc:
        raise OverflowError("coefficient too large for the numeric oracle") from exc
    roots = [cmath.exp(2j * math.pi * t / r) for t in range(r)]

    log_mag = 0.0
    phase = 1 + 0j
    for combo in itertools.product(range(r), repeat=n):
        scaled = [values[i] * roots[combo[i]] for i in range(n)]
        value = 0j
        for e, c in coeffs:
            term = c
            for z, exp in zip(scaled, e):
                term *= z ** exp
            value += term
        if value == 0:
            return 0j
        mag = abs(value)
        log_mag += math.log(mag)
        phase *= value / mag
    if log_mag > 709.0:
        raise OverflowError(
            f"product magnitude exp({log_mag:.3g}) exceeds double range despite log tracking"
        )
    return math.exp(log_mag) * phase
