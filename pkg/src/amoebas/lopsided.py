"""Lopsidedness certificates for points in log space.

A Laurent polynomial is lopsided at a point when one term's magnitude
strictly exceeds the sum of all the others.  No zero of the polynomial
can have that property, so lopsidedness at w certifies that w lies in
the complement of the log image of the zero set.  Tests run in log
space: the magnitude of a term becomes log|coef| + <exponent, w>, and
the comparison becomes a gap between the largest of those values and
the log-sum-exp of the rest.

A certificate also reveals which complement component the point sits
in.  When the tested polynomial folds together 2^level root-of-unity
substitutions per variable, the dominating exponent is 2^(level*nvars)
times the component's order vector, so dividing recovers the order.

Scalar and batched queries share one float pipeline: inner products are
float(exact integer) / float(common denominator), and ties between
equal values resolve to the earliest term in graded-lex descending
order.  A point is therefore classified identically no matter which
route tested it or how the batch was chunked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .gaussian import log_abs
from .poly import ExponentVector, LaurentPoly

# Certification threshold for the log gap.  Strictly positive so float
# noise near the boundary can never produce a false certificate; small
# enough (about 1e-6) to be invisible at plotting resolution.
TAU = 2.0 ** -20

LEVEL_CAP = 30

# int64 matmul is used only when every possible inner product is
# provably below this, leaving headroom inside the int64 range.
_SAFE_DOT = 2 ** 62


class CertificateError(ValueError):
    """A certificate violated an invariant it should hold by construction."""


@dataclass(frozen=True)
class Certificate:
    """Outcome of one lopsidedness test.

    margin is log(peak magnitude) - log(sum of the other magnitudes);
    the point is certified when margin > TAU.  dominant is the exponent
    of the peak term whether or not the test passed.
    """

    lopsided: bool
    dominant: ExponentVector
    margin: float
    level: int


def point_numerators(w, nvars):
    """Rational point -> (integer numerators, common denominator)."""
    coords = [Fraction(x) for x in w]
    if len(coords) != nvars:
        raise ValueError(f"point has {len(coords)} coordinates, expected {nvars}")
    den = math.lcm(*(c.denominator for c in coords)) if coords else 1
    nums = tuple(c.numerator * (den // c.denominator) for c in coords)
    return nums, den


class TermTable:
    """Precomputed per-term data for repeated lopsidedness queries."""

    __slots__ = ("nvars", "exponents", "logb", "_emat", "_row_bound", "_fmat")

    def __init__(self, p: LaurentPoly):
        if p.is_zero:
            raise ValueError("the zero polynomial has no lopsided points")
        terms = p.sorted_terms()
        self.nvars = p.nvars
        self.exponents = tuple(e for e, _ in terms)
        self.logb = np.array([log_abs(c).value for _, c in terms])
        try:
            emat = np.array(self.exponents, dtype=np.int64)
        except OverflowError:
            emat = None
        self._emat = emat
        self._row_bound = (
            int(np.abs(emat).sum(axis=1).max()) if emat is not None else 0
        )
        self._fmat = None

    def __len__(self):
        return len(self.exponents)

    def dots(self, rows, den):
        """Inner products <exponent, row>/den for every term, shape (N, T).

        Each entry is float(exact integer) / float(den).  The int64 fast
        path is taken only when the exactness of the integer part is
        guaranteed, so both paths round identically.
        """
        nmax = max((abs(v) for row in rows for v in row), default=0)
        if (
            self._emat is not None
            and nmax < _SAFE_DOT
            and self._row_bound * nmax < _SAFE_DOT
        ):
            m = np.asarray(rows, dtype=np.int64)
            return (m @ self._emat.T).astype(np.float64) / float(den)
        out = np.empty((len(rows), len(self.exponents)))
        for i, row in enumerate(rows):
            for j, e in enumerate(self.exponents):
                out[i, j] = float(sum(a * b for a, b in zip(e, row))) / float(den)
        return out

    def values(self, rows, den):
        """Log magnitudes of every term at every row, shape (N, T)."""
        return self.logb + self.dots(rows, den)

    def float_values(self, wmat):
        """Log magnitudes at float log points, shape (N, T).

        For sampled magnitudes whose logs are irrational the exact
        numerator pipeline does not apply; this path is still
        deterministic for a fixed input because every row is an
        independent float matmul.
        """
        if self._fmat is None:
            self._fmat = np.array(self.exponents, dtype=np.float64)
        return self.logb + np.asarray(wmat, dtype=np.float64) @ self._fmat.T

    def classify(self, rows, den):
        """Batched test: (certified bools, peak indices, margins)."""
        vals = self.values(rows, den)
        idx, margin = peak_margins(vals)
        return margin > TAU, idx, margin

    def certificate(self, w, level=0):
        """Test a single rational point; w entries coerce via Fraction."""
        nums, den = point_numerators(w, self.nvars)
        ok, idx, margin = self.classify([nums], den)
        return Certificate(
            bool(ok[0]), self.exponents[int(idx[0])], float(margin[0]), level
        )


def margins_at(values, idx):
    """Log gap of the term at idx versus the log-sum-exp of the others.

    values has shape (N, T), idx shape (N,).  The sum is taken over
    exp-scaled values sorted ascending and accumulated sequentially, so
    the result does not depend on how callers chunk their batches.
    """
    n, t = values.shape
    if t == 1:
        return np.full(n, math.inf)
    rows = np.arange(n)
    peak = values[rows, idx]
    rest = values.copy()
    rest[rows, idx] = -math.inf
    m2 = rest.max(axis=1)
    z = np.exp(rest - m2[:, None])
    z.sort(axis=1)
    total = np.cumsum(z, axis=1)[:, -1]
    return peak - (m2 + np.log(total))


def peak_margins(values):
    """First-max index per row and its margin against the rest."""
    idx = np.argmax(values, axis=1)
    return idx, margins_at(values, idx)


def is_lopsided(g, w, level=0):
    """One-shot certificate for g at the rational point w."""
    return TermTable(g).certificate(w, level)


def order_from_certificate(cert):
    """Complement-component order encoded by a passing certificate.

    The dominating exponent must be divisible coordinatewise by
    2^(level*nvars); a remainder means the certificate is corrupt.
    """
    if not cert.lopsided:
        raise CertificateError("point was not certified, it has no order")
    div = 1 << (cert.level * len(cert.dominant))
    order = []
    for e in cert.dominant:
        q, r = divmod(e, div)
        if r:
            raise CertificateError(
                f"dominating exponent {cert.dominant} is not divisible by {div}"
            )
        order.append(q)
    return tuple(order)


def choose_level(nvars, degree, eps):
    """Smallest folding level whose distance guarantee is below eps.

    The certified region at level k lies within c*k/2^k of the true log
    image, where c depends on the variable count and total degree.
    Levels are capped at LEVEL_CAP; tighter eps raises ValueError.
    """
    if nvars < 1:
        raise ValueError("need at least one variable")
    if degree < 1:
        raise ValueError("total degree must be at least 1")
    if not eps > 0:
        raise ValueError("eps must be positive")
    c = (nvars - 1) * math.log(2) + math.log((nvars + 3) * 2 ** (nvars + 1) * degree)
    for k in range(1, LEVEL_CAP + 1):
        if 2.0 ** k / k >= c / eps:
            return k
    raise ValueError(f"eps={eps} needs a folding level beyond {LEVEL_CAP}")
