import math

import mpmath as mp
import numpy as np
import pytest

from bellstates.boson_algebra import bell_sequence
from bellstates.coherent_states import CoherentFamily, normalization
from bellstates.errors import InvalidParameters, TailBoundError, UnsupportedError
from bellstates.sequences import B_ZERO
from bellstates.special_functions import bessel_i
from bellstates.weights import (
    Kind,
    QuadratureConfig,
    WeightSpec,
    comb_strengths,
    dirac_comb_moment,
    moment,
    weight,
    weight_closed,
    weight_series,
    weight_tilde,
)

from oracles import mp_weight

XS = (0.01, 0.1, 1, 5, 10, 25)


def test_kind():
    assert WeightSpec(1).kind is Kind.DISCRETE
    assert WeightSpec(3, 0).kind is Kind.CONTINUOUS
    with pytest.raises(InvalidParameters):
        WeightSpec(0)


def test_w2_at_one_is_bessel_value():
    expected = math.exp(-2) * bessel_i(1, 2.0)
    assert weight_closed(2, 1.0) == pytest.approx(expected, rel=1e-14)
    assert expected == pytest.approx(0.21526928, abs=1e-8)


def test_w2_small_x_behaviour():
    # sqrt(x) I_1(2 sqrt(x)) ~ x, so W ~ x/e
    for x in (1e-6, 1e-8):
        assert weight_closed(2, x) == pytest.approx(x / math.e, rel=1e-5)


def test_w3_small_x_behaviour():
    # leading term of both forms: (1/(2e)) (2/sqrt(pi)) sqrt(x/2)
    x = 1e-10
    lead = math.sqrt(x / 2) / (math.e * math.sqrt(math.pi))
    assert weight_closed(3, x) == pytest.approx(lead, rel=1e-4)
    assert weight_series(3, x) == pytest.approx(lead, rel=1e-4)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_series_matches_closed_form(r):
    for x in XS:
        assert abs(weight_series(r, x) / weight_closed(r, x) - 1) <= 1e-10


@pytest.mark.parametrize("r, x", [(2, 1.0), (4, 5.0), (3, 1.0), (5, 3.0), (6, 40.0)])
def test_series_against_mpmath(r, x):
    assert weight_series(r, x) == pytest.approx(float(mp_weight(r, x)), rel=1e-12)


def test_series_vectorised():
    xs = np.array(XS, dtype=float)
    out = weight_series(3, xs)
    assert out.shape == xs.shape
    assert np.allclose(out, [weight_series(3, float(x)) for x in xs], rtol=1e-15, atol=0)


def test_series_positive_for_higher_r():
    xs = np.geomspace(1e-3, 200, 50)
    for r in range(2, 7):
        assert np.all(weight_series(r, xs) > 0)


def test_errors():
    with pytest.raises(UnsupportedError):
        weight_closed(5, 1.0)
    with pytest.raises(InvalidParameters):
        weight_closed(2, 0.0)
    with pytest.raises(InvalidParameters):
        weight_series(1, 1.0)
    with pytest.raises(InvalidParameters):
        weight_series(2, -1.0)


@pytest.mark.parametrize("n, expected", [(0, 1), (2, 5), (5, 203)])
def test_dirac_comb_examples(n, expected):
    assert dirac_comb_moment(n) == pytest.approx(expected, rel=1e-12)


def test_dirac_comb_all_moments():
    seq = bell_sequence(1, 9)
    for n in range(9):
        assert abs(dirac_comb_moment(n) / seq[n] - 1) <= 1e-10


def test_comb_strengths():
    strengths = dict(comb_strengths(6))
    assert 0 not in strengths
    assert strengths[1] == pytest.approx(1 / math.e)
    assert strengths[3] == pytest.approx(1 / (2 * math.e))
    assert dict(comb_strengths(2, p=0))[0] == pytest.approx(1 / math.e)


@pytest.mark.parametrize(
    "spec, n, expected, tol",
    [(WeightSpec(2, 1), 0, 1.0, 1e-8), (WeightSpec(3, 1), 2, 25.0, 1e-6), (WeightSpec(2, 0), 0, B_ZERO, 1e-8)],
)
def test_moment_examples(spec, n, expected, tol):
    assert moment(spec, n) == pytest.approx(expected, rel=tol)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_moment_identity(r):
    seq = bell_sequence(r, 9)
    for n in range(9):
        assert abs(moment(WeightSpec(r, 1), n) / seq[n] - 1) <= 1e-6


def test_moments_validate_series_for_higher_r():
    for r in (5, 6):
        seq = bell_sequence(r, 11)
        for n in range(11):
            assert abs(moment(WeightSpec(r, 1), n) / seq[n] - 1) <= 1e-6


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_shift_consistency(r):
    for p in (1, 2):
        for n in range(5):
            a = moment(WeightSpec(r, p), n)
            b = moment(WeightSpec(r, p - 1), n + 1)
            assert a == pytest.approx(b, rel=1e-8)


def test_p0_moments_include_b_zero():
    for r in (2, 3, 4):
        assert moment(WeightSpec(r, 0), 0) == pytest.approx(B_ZERO, rel=1e-8)
    assert moment(WeightSpec(1, 0), 0) == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_normalised(r):
    assert abs(moment(WeightSpec(r, 1), 0) - 1) <= 1e-8


def test_quadrature_cross_check_with_mpmath():
    with mp.workdps(20):
        ref = mp.quad(lambda x: x**3 * mp_weight(3, x, dps=20), [0, 1, 10, 60, mp.inf])
    assert moment(WeightSpec(3, 1), 3) == pytest.approx(float(ref), rel=1e-10)


def test_tail_bound_violation():
    with pytest.raises(TailBoundError):
        moment(WeightSpec(3, 1), 4, QuadratureConfig(x_max=10.0))


def test_quadrature_config_validation():
    with pytest.raises(InvalidParameters):
        QuadratureConfig(panels=2, points_per_panel=10)


def test_weight_shift():
    x = 2.5
    assert weight(WeightSpec(3, 0), x) == pytest.approx(weight_series(3, x) / x)
    assert weight(WeightSpec(3, 3), x) == pytest.approx(weight_series(3, x) * x * x)
    with pytest.raises(InvalidParameters):
        weight(WeightSpec(1, 1), x)


def test_weight_tilde():
    fam = CoherentFamily.combinatorial(2, 1)
    expected = weight_closed(2, 1.0) * normalization(fam, 1.0) / math.pi
    assert weight_tilde(WeightSpec(2, 1), 1.0, fam) == pytest.approx(expected, rel=1e-12)
    for x in (1e-6, 0.5, 10, 30):
        assert weight_tilde(WeightSpec(2, 1), x, fam) > 0
    assert weight_tilde(WeightSpec(2, 1), 1e-12, fam) < 1e-11
    with pytest.raises(InvalidParameters):
        weight_tilde(WeightSpec(3, 1), 1.0, fam)


def test_resolution_of_unity_diagonal():
    # <n| ∫ d^2z |z> W~ <z| |n> = π ∫ x^n W~(x) / (rho(n) N(x)) dx = 1
    fam = CoherentFamily.combinatorial(3, 1)
    spec = WeightSpec(3, 1)
    seq = bell_sequence(3, 6)
    for n in range(5):
        with mp.workdps(20):
            val = mp.quad(
                lambda x: math.pi * float(x) ** n
                * weight_tilde(spec, float(x), fam) / normalization(fam, float(x)),
                [0, 5, 20, 80],
            )
        assert float(val) / seq[n] == pytest.approx(1.0, rel=1e-8)
