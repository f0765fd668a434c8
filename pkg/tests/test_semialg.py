"""Branch-union description of the certified region, and its raster image."""

import json
from fractions import Fraction

import jsonschema
import numpy as np
import pytest
from hypothesis import given, settings

from amoebas.cycres import quick_cyclic_resultant
from amoebas.lopsided import TermTable, order_from_certificate
from amoebas.poly import parse
from amoebas.semialg import (
    Raster,
    SemiAlgSystem,
    magnitude_string,
    semialg_description,
)
from conftest import rational_points
from oracles import CUBIC, GAUSS_PAIR, LINE, LINE_K1_CANDIDATES, line_unlog_member

SYSTEM_SCHEMA = {
    "type": "object",
    "required": ["level", "candidates", "baseTerms"],
    "properties": {
        "level": {"type": "integer", "minimum": 1},
        "candidates": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["order", "scaledExponent", "sqMagnitude"],
                "properties": {
                    "order": {"type": "array", "items": {"type": "integer"}},
                    "scaledExponent": {"type": "array", "items": {"type": "integer"}},
                    "sqMagnitude": {"type": "string"},
                },
            },
        },
        "baseTerms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["exponent", "sqMagnitude"],
                "properties": {
                    "exponent": {"type": "array", "items": {"type": "integer"}},
                    "sqMagnitude": {"type": "string"},
                },
            },
        },
    },
}


@pytest.fixture(scope="module")
def line_system():
    return semialg_description(parse(LINE, 2), 1)


def test_line_level_one_structure(line_system):
    assert line_system.level == 1
    got = {c.order: (c.scaled_exponent, c.sq_magnitude) for c in line_system.candidates}
    assert got == LINE_K1_CANDIDATES
    # squared magnitudes of the folded product, graded order
    assert [(t.exponent, t.sq_magnitude) for t in line_system.base.terms] == [
        ((4, 0), Fraction(1)),
        ((2, 2), Fraction(4)),
        ((0, 4), Fraction(1)),
        ((2, 0), Fraction(4)),
        ((0, 2), Fraction(4)),
        ((0, 0), Fraction(1)),
    ]


def test_pretty_golden(line_system):
    assert line_system.pretty() == (
        "level 1 certificate region, coordinates x1..x2 > 0\n"
        "g(x) = x1^4 + 2*x1^2*x2^2 + x2^4 + 2*x1^2 + 2*x2^2 + 1\n"
        "union over candidate orders of the branch where one term outweighs the rest:\n"
        "  order (0, 0): 2 > g(x)\n"
        "  order (0, 1): 2*x2^4 > g(x)\n"
        "  order (1, 0): 2*x1^4 > g(x)"
    )


def test_json_round_trip(line_system):
    obj = json.loads(line_system.to_json())
    jsonschema.validate(obj, SYSTEM_SCHEMA)
    assert obj["level"] == 1
    assert {tuple(c["order"]) for c in obj["candidates"]} == set(LINE_K1_CANDIDATES)
    assert all(c["sqMagnitude"] == "1" for c in obj["candidates"])


def test_empty_branch_is_kept(cubic):
    system = semialg_description(cubic, 2)
    by_order = {c.order: c for c in system.candidates}
    assert len(by_order) == 10  # lattice points of the exponent hull
    assert by_order[(1, 0)].sq_magnitude == 0  # no term at (16, 0)
    assert by_order[(1, 1)].sq_magnitude == Fraction(969**2)
    assert "empty branch" in system.pretty()
    obj = json.loads(system.to_json())
    jsonschema.validate(obj, SYSTEM_SCHEMA)


def test_explicit_candidates():
    system = semialg_description(parse(LINE, 2), 1, candidates=[(1, 0)])
    assert [c.order for c in system.candidates] == [(1, 0)]
    # the (1, 0) branch alone certifies only the x1-dominant tentacle
    assert system.certify_log((4, 0)) == (1, 0)
    assert system.certify_log((0, 4)) is None


def test_candidate_validation(cubic):
    with pytest.raises(ValueError):
        semialg_description(cubic, 1, candidates=[(1, 0, 0)])
    with pytest.raises(ValueError):
        semialg_description(cubic, 1, candidates=[])
    with pytest.raises(ValueError):
        semialg_description(cubic, 0)
    from amoebas.poly import LaurentPoly

    with pytest.raises(ValueError):
        semialg_description(LaurentPoly.zero(2), 1)


def test_magnitude_string():
    assert magnitude_string(Fraction(0)) == "0"
    assert magnitude_string(Fraction(1)) == "1"
    assert magnitude_string(Fraction(4)) == "2"
    assert magnitude_string(Fraction(9, 4)) == "3/2"
    assert magnitude_string(Fraction(2)) == "sqrt(2)"
    assert magnitude_string(Fraction(1, 2)) == "sqrt(1/2)"


_CUBIC_SYSTEM = semialg_description(parse(CUBIC, 2), 1)
_CUBIC_TABLE = TermTable(quick_cyclic_resultant(parse(CUBIC, 2), 1))


@given(rational_points(2, bound=6, max_denominator=8))
@settings(max_examples=200)
def test_certify_matches_raw_certificate(w):
    cert = _CUBIC_TABLE.certificate(w, level=1)
    if cert.lopsided:
        assert _CUBIC_SYSTEM.certify_log(w) == order_from_certificate(cert)
    else:
        assert _CUBIC_SYSTEM.certify_log(w) is None
        assert _CUBIC_SYSTEM.contains_log(w)


def test_contains_takes_magnitudes(line_system):
    assert line_system.contains((1.0, 1.0))
    assert not line_system.contains((0.05, 2.9))
    with pytest.raises(ValueError):
        line_system.contains((0.0, 1.0))
    with pytest.raises(ValueError):
        line_system.contains((-1.0, 1.0))


def test_raster_line_tracks_exact_region(line_system):
    raster = line_system.rasterize(Fraction(1, 20), 3, 128)
    assert isinstance(raster, Raster)
    assert raster.mask.shape == (128, 128)
    assert raster.axes[0][0] == Fraction(1, 20)
    assert raster.axes[0][-1] == Fraction(3)
    # every point of the true curve's magnitude image must survive:
    # the approximation never undercovers
    for i, x1 in enumerate(raster.axes[0]):
        for j, x2 in enumerate(raster.axes[1]):
            if line_unlog_member(x1, x2) and not raster.mask[i, j]:
                pytest.fail(f"undercovered true point ({x1}, {x2})")
    # and it is not the whole box
    assert not raster.mask.all()
    assert raster.boundary  # the edge shows up at this resolution


def test_raster_rectangular_and_exact_axes(line_system):
    raster = line_system.rasterize((Fraction(1, 10), Fraction(1, 5)), (2, 3), (5, 9))
    assert raster.mask.shape == (5, 9)
    assert raster.axes[0] == tuple(
        Fraction(1, 10) + i * (2 - Fraction(1, 10)) / 4 for i in range(5)
    )
    assert raster.axes[1][-1] == Fraction(3)
    for c1, c2 in raster.boundary:
        assert isinstance(c1, Fraction) and isinstance(c2, Fraction)


def test_raster_thread_determinism(line_system):
    solo = line_system.rasterize(Fraction(1, 20), 3, 64, threads=1)
    pooled = line_system.rasterize(Fraction(1, 20), 3, 64, threads=4)
    assert (solo.mask == pooled.mask).all()
    assert solo.boundary == pooled.boundary


def test_raster_monomial_is_all_certified():
    system = semialg_description(parse("3*z1*z2", 2), 1)
    raster = system.rasterize(Fraction(1, 2), 2, 16)
    assert not raster.mask.any()
    assert raster.boundary == ()


def test_raster_validation(line_system):
    with pytest.raises(ValueError):
        semialg_description(parse("z1 + 1", 1), 1).rasterize(1, 2, 8)
    with pytest.raises(ValueError):
        line_system.rasterize(Fraction(1, 2), 2, 1)
    with pytest.raises(ValueError):
        line_system.rasterize(0, 2, 8)
    with pytest.raises(ValueError):
        line_system.rasterize(2, 1, 8)
    with pytest.raises(ValueError):
        line_system.rasterize((1, 1, 1), 2, 8)


def test_gaussian_coefficients_quadratic_magnitudes():
    system = semialg_description(parse(GAUSS_PAIR, 2), 1)
    sqs = {t.exponent: t.sq_magnitude for t in system.base.terms}
    # |1+i|^2 = 2 folded four times gives |(1+i)^4|^2 = 16, exactly
    assert sqs[(8, 4)] == 16
    assert sqs[(0, 0)] == Fraction(1, 256)
    assert magnitude_string(sqs[(0, 4)]) == "27/2"
