import math
from itertools import accumulate, islice

import pytest

from bellstates.boson_algebra import bell_exact
from bellstates.errors import ConvergenceError, InvalidParameters, UnsupportedError
from bellstates.sequences import (
    B_ZERO,
    RhoSequence,
    bell_dobinski,
    bell_hypergeom,
    box,
    dobinski_terms,
    rho,
)
from bellstates.series import SeriesConfig

from oracles import mp_bell_dobinski


@pytest.mark.parametrize("r, n, expected", [(1, 3, 5), (2, 4, 73)])
def test_dobinski_examples(r, n, expected):
    assert bell_dobinski(r, n) == pytest.approx(expected, rel=1e-12)


def test_dobinski_at_zero():
    for r in (2, 3, 4, 7):
        assert bell_dobinski(r, 0) == pytest.approx((math.e - 1) / math.e, abs=1e-15)
    assert bell_dobinski(1, 0) == pytest.approx(1.0, abs=1e-15)
    assert B_ZERO == pytest.approx(0.632120558828558, abs=1e-15)


def test_dobinski_oracle_agreement():
    for r in (1, 2, 3, 4):
        for n in range(1, 9):
            assert abs(bell_dobinski(r, n) / bell_exact(r, 1, n) - 1) <= 1e-10


def test_dobinski_against_mpmath_for_larger_n():
    for r, n in [(2, 12), (5, 6), (1, 15)]:
        assert bell_dobinski(r, n) == pytest.approx(float(mp_bell_dobinski(r, n)), rel=1e-12)


@pytest.mark.parametrize("r, n", [(1, 6), (2, 8), (3, 5), (4, 8)])
def test_dobinski_partial_sums_are_increasing_lower_bounds(r, n):
    terms = list(islice(dobinski_terms(r, n), 60))
    assert all(t >= 0 for t in terms)
    partial = list(accumulate(terms))
    assert all(b >= a for a, b in zip(partial, partial[1:]))
    assert all(s <= bell_exact(r, 1, n) * (1 + 1e-14) for s in partial)


def test_dobinski_no_convergence():
    with pytest.raises(ConvergenceError):
        bell_dobinski(1, 40, SeriesConfig(max_terms=10))


@pytest.mark.parametrize("r, n, expected", [(2, 1, 1), (2, 6, 4051), (3, 5, 2236)])
def test_hypergeom_examples(r, n, expected):
    assert bell_hypergeom(r, n) == pytest.approx(expected, rel=1e-12)


def test_hypergeom_agreement():
    for r in (2, 3):
        for n in range(1, 9):
            assert abs(bell_hypergeom(r, n) / bell_exact(r, 1, n) - 1) <= 1e-10


def test_hypergeom_unsupported():
    with pytest.raises(UnsupportedError):
        bell_hypergeom(4, 2)
    with pytest.raises(InvalidParameters):
        bell_hypergeom(2, 0)


@pytest.mark.parametrize("args, expected", [((1, 1, 0), 1), ((2, 1, 2), 13), ((3, 0, 4), 211)])
def test_rho_examples(args, expected):
    assert rho(*args) == expected


def test_rho_rejects_nonintegral_entry():
    with pytest.raises(InvalidParameters):
        rho(2, 0, 0)


@pytest.mark.parametrize("args, expected", [((1, 1), 2.0), ((2, 2), 13 / 3), ((4, 1), 5.0)])
def test_box_examples(args, expected):
    assert box(*args) == pytest.approx(expected, rel=1e-15)


def test_box_rejects_zero():
    with pytest.raises(InvalidParameters):
        box(2, 0)


def test_rho_sequence_positive_and_increasing():
    for r in (1, 2, 3, 4):
        for p in (0, 1, 2):
            seq = RhoSequence(r, p, 30)
            vals = seq.values()
            assert all(v > 0 for v in vals)
            assert all(b >= a for a, b in zip(vals, vals[1:]))
            # strict once both entries are exact Bell numbers B(m), m >= 1
            assert all(b > a for a, b in zip(vals[1:], vals[2:]))
            boxes = seq.boxes()
            assert boxes[0] == 0.0
            assert math.prod(boxes[1:8]) == pytest.approx(vals[7] / vals[0], rel=1e-13)


def test_rho_sequence_head():
    assert RhoSequence(2, 0, 4).exact == (None, 1, 3, 13)
    assert RhoSequence(2, 0, 4).first() == pytest.approx(B_ZERO)
    assert RhoSequence(1, 0, 4).exact == (1, 1, 2, 5)
    assert RhoSequence(3, 1, 3).exact == (1, 4, 25)
    assert RhoSequence(2, 0, 4, rho0=1.0).boxes()[1] == 1.0
