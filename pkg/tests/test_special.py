import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ML_15_15_M1
from rlrobin.errors import DomainError, NonConvergenceError
from rlrobin.special import (
    MLParams,
    Z_MAX,
    log_gamma,
    ml_terms,
    mittag_leffler,
    mittag_leffler_array,
    mittag_leffler_detailed,
    rgamma,
)


@pytest.mark.parametrize("x, expected", [(1.0, 0.0), (2.0, 0.0), (0.5, 0.5 * math.log(math.pi))])
def test_log_gamma_examples(x, expected):
    assert log_gamma(x) == pytest.approx(expected, abs=1e-15)


def test_log_gamma_relative_accuracy():
    mpmath.mp.dps = 40
    near_zeros = np.concatenate([c + s * np.logspace(-12, -1, 23) for c in (1.0, 2.0) for s in (-1.0, 1.0)])
    xs = np.concatenate([np.linspace(0.5, 50, 997), near_zeros])
    rel = [abs(log_gamma(x) - float(mpmath.loggamma(x))) / abs(float(mpmath.loggamma(x))) for x in xs]
    assert max(rel) <= 1e-13


@pytest.mark.parametrize("x", [0.0, -1.0, float("nan"), float("inf")])
def test_log_gamma_domain(x):
    with pytest.raises(DomainError):
        log_gamma(x)


@given(st.floats(0.5, 170.0))
def test_log_gamma_agrees_with_libm(x):
    assert log_gamma(x) == pytest.approx(math.lgamma(x), rel=1e-13, abs=1e-15)


@given(st.floats(0.05, 60.0))
def test_log_gamma_recurrence(x):
    assert log_gamma(x + 1.0) == pytest.approx(log_gamma(x) + math.log(x), rel=1e-12, abs=1e-14)


def test_rgamma_poles_and_values():
    assert rgamma(0.0) == 0.0
    assert rgamma(-3.0) == 0.0
    assert rgamma(2.5) == pytest.approx(0.75225277806367504926, rel=1e-15)
    assert rgamma(-0.5) == pytest.approx(1 / math.gamma(-0.5))


@pytest.mark.parametrize(
    "alpha, beta, z, expected",
    [
        (1.0, 1.0, 1.0, math.e),
        (2.0, 1.0, 4.0, math.cosh(2.0)),
        (2.0, 2.0, 4.0, math.sinh(2.0) / 2.0),
        (1.5, 1.5, -1.0, ML_15_15_M1),
    ],
)
def test_mittag_leffler_examples(alpha, beta, z, expected):
    assert mittag_leffler(MLParams(alpha, beta), z) == pytest.approx(expected, abs=1e-12)


@given(st.floats(-10, 10))
def test_exp_reduction(z):
    tol = 1e-12
    assert abs(mittag_leffler(MLParams(1.0, 1.0, tol), z) - math.exp(z)) <= 10 * tol * max(1.0, math.exp(z) / 100)


@given(st.floats(0, 25))
def test_cosh_reduction(z):
    tol = 1e-12
    assert abs(mittag_leffler(MLParams(2.0, 1.0, tol), z) - math.cosh(math.sqrt(z))) <= 10 * tol


@given(st.floats(0.1, 3.0), st.floats(0.05, 4.0))
def test_value_at_zero_is_reciprocal_gamma(alpha, beta):
    assert mittag_leffler(MLParams(alpha, beta), 0.0) == rgamma(beta)


@given(st.floats(0.3, 2.5), st.floats(0.2, 3.0), st.floats(-8.0, 8.0))
@settings(max_examples=50, deadline=None)
def test_term_recurrence_matches_direct_terms(alpha, beta, z):
    params = MLParams(alpha, beta)
    direct = ml_terms(params, z, 30)
    rec = [direct[0]]
    for k in range(29):
        ratio = math.exp(log_gamma(k * alpha + beta) - log_gamma((k + 1) * alpha + beta))
        rec.append(rec[-1] * z * ratio)
    rec = np.array(rec)
    nz = np.abs(direct) > 1e-250
    assert np.allclose(rec[nz], direct[nz], rtol=1e-12, atol=0)


def _mp_series(alpha, beta, z, terms=400):
    return float(mpmath.fsum(mpmath.mpf(z) ** k * mpmath.rgamma(k * mpmath.mpf(alpha) + beta) for k in range(terms)))


def test_against_extended_precision_series():
    mpmath.mp.dps = 50
    for alpha, beta in [(0.5, 1.0), (1.1, 0.1), (1.5, 1.5), (1.9, 0.9), (2.5, 3.0)]:
        for z in (-7.5, -2.0, 0.3, 4.0, 9.0):
            exact = _mp_series(alpha, beta, z)
            res = mittag_leffler_detailed(MLParams(alpha, beta), z)
            # the gauge must cover the actual error, cancellation included
            assert abs(res.value - exact) <= max(1e-11 * max(1.0, abs(exact)), res.rounding_bound)


def test_alpha_near_one_large_negative_argument():
    # largest term ~1e8 at z = -30, ~1e13 at z = -50
    mpmath.mp.dps = 60
    for z in (-30.0, -50.0):
        for beta in (1.0, 1.1, 0.1):
            exact = _mp_series(1.1, beta, z, 700)
            assert mittag_leffler(MLParams(1.1, beta), z) == pytest.approx(exact, abs=1e-11)


def test_array_matches_scalar():
    zs = np.linspace(-20, 20, 81)
    for alpha, beta in [(1.1, 1.1), (1.5, 0.5), (2.0, 1.0)]:
        params = MLParams(alpha, beta)
        arr = mittag_leffler_array(params, zs)
        for z, v in zip(zs, arr):
            res = mittag_leffler_detailed(params, z)
            assert abs(v - res.value) <= 4 * res.rounding_bound + 1e-15 * abs(v)


def test_domain_and_convergence_errors():
    with pytest.raises(DomainError):
        mittag_leffler(MLParams(1.0), Z_MAX + 1)
    with pytest.raises(DomainError):
        MLParams(0.0)
    with pytest.raises(DomainError):
        MLParams(1.0, tol=0.0)
    with pytest.raises(DomainError):
        MLParams(1.0, max_terms=0)
    with pytest.raises(NonConvergenceError):
        mittag_leffler(MLParams(1.0, 1.0, 1e-12, max_terms=5), 3.0)


def test_small_term_alone_does_not_stop_the_series():
    # beta = -1 makes the first two coefficients exactly zero
    res = mittag_leffler_detailed(MLParams(1.0, -1.0), 2.0)
    assert res.terms > 3
    # E_{1,-1}(z) = z^2 e^z
    assert res.value == pytest.approx(4.0 * math.exp(2.0), rel=1e-13)


def test_cancellation_does_not_reach_the_result():
    # terms up to ~1e13 cancel down to ~1e-5; double-double accumulation absorbs it
    mpmath.mp.dps = 60
    res = mittag_leffler_detailed(MLParams(1.1, 1.1), -50.0)
    assert res.abs_sum > 1e14
    assert res.rounding_bound < 1e-15
    assert res.value == pytest.approx(_mp_series(1.1, 1.1, -50.0, 700), abs=1e-12)
