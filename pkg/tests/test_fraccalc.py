import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rlrobin.errors import DomainError
from rlrobin.fraccalc import (
    GridFunction,
    WeightedFunction,
    power_rule_derivative,
    power_rule_integral,
    rl_derivative,
    rl_derivative_all,
    rl_integral,
    rl_integral_all,
)


def grid(func, n=64, a=0.0, b=1.0):
    return GridFunction.sample(func, a, b, n)


def test_grid_function_invariants():
    g = grid(lambda t: t, n=4)
    assert g.n == 4 and np.allclose(g.t, [0, 0.25, 0.5, 0.75, 1.0])
    with pytest.raises(DomainError):
        GridFunction(1.0, 0.0, [1, 2, 3])
    with pytest.raises(DomainError):
        GridFunction(0.0, 1.0, [1, 2])
    with pytest.raises(DomainError):
        GridFunction(0.0, 1.0, [1, np.nan, 3])
    flagged = grid(lambda t: t**-0.5, n=8)
    assert flagged.flagged and not grid(np.sqrt).flagged


def test_weighted_function_norm():
    y = grid(lambda t: t**-0.5 + 1.0, n=8)
    w = WeightedFunction.from_function(y, 0.5, limit_at_a=1.0)
    assert w.norm() == pytest.approx(2.0)
    with pytest.raises(DomainError):
        WeightedFunction.from_function(y, 0.5)
    with pytest.raises(DomainError):
        WeightedFunction(1.0, grid(np.sqrt))


def test_rl_integral_examples():
    assert rl_integral(grid(np.ones_like), 1.0, 64) == pytest.approx(1.0, abs=1e-14)
    assert rl_integral(grid(lambda t: t), 1.0, 64) == pytest.approx(0.5, abs=1e-14)
    exact = math.sqrt(math.pi) / 4
    errs = [abs(rl_integral(grid(np.sqrt, n), 1.5, n) - exact) for n in (256, 512, 1024, 2048)]
    assert all(e2 < e1 for e1, e2 in zip(errs, errs[1:]))
    assert errs[-1] < 1e-5


@pytest.mark.parametrize("alpha", [0.3, 1.0, 1.5, 2.0, 2.7])
def test_exact_on_linear_data(alpha):
    f = grid(lambda t: 2.0 - 3.0 * t, n=40, a=0.5, b=2.5)
    for i in (1, 7, 40):
        x = f.t[i] - f.a
        # 2 - 3t = 0.5 - 3 (t - a) on [0.5, 2.5]
        exact = 0.5 * power_rule_integral(alpha, 1.0, 0.0, x) - 3.0 * power_rule_integral(alpha, 2.0, 0.0, x)
        assert rl_integral(f, alpha, i) == pytest.approx(exact, rel=1e-12, abs=1e-14)


def test_alpha_zero_is_identity():
    f = grid(np.cos, n=33)
    assert all(rl_integral(f, 0.0, i) == f.values[i] for i in range(f.n + 1))
    assert np.array_equal(rl_integral_all(f, 0.0), f.values)


def test_vectorised_matches_pointwise():
    f = grid(lambda t: np.exp(-t) * np.sin(5 * t), n=200)
    for alpha in (0.25, 0.5, 1.0, 1.7):
        allv = rl_integral_all(f, alpha)
        pts = [rl_integral(f, alpha, i) for i in range(f.n + 1)]
        assert np.allclose(allv, pts, rtol=1e-12, atol=1e-15)


@given(
    st.floats(-3, 3), st.floats(-3, 3), st.floats(0.1, 2.0),
    st.lists(st.floats(-5, 5), min_size=17, max_size=17),
)
@settings(max_examples=40, deadline=None)
def test_linearity(c1, c2, alpha, vals):
    f = GridFunction(0.0, 1.0, vals)
    g = grid(np.cos, n=16)
    lhs = rl_integral_all(c1 * f + c2 * g, alpha)
    rhs = c1 * rl_integral_all(f, alpha) + c2 * rl_integral_all(g, alpha)
    scale = rl_integral_all(abs(c1) * f.with_values(np.abs(f.values)) + abs(c2) * g, alpha)
    assert np.all(np.abs(lhs - rhs) <= 1e-12 * np.maximum(scale, 1e-300) + 1e-15)


@pytest.mark.parametrize("beta", [1.0, 1.5, 2.5])
@pytest.mark.parametrize("alpha", [0.5, 1.5])
def test_power_rule_convergence_order(alpha, beta):
    exact = power_rule_integral(alpha, beta, 0.0, 1.0)
    errs = []
    for n in (128, 256, 512, 1024):
        errs.append(abs(rl_integral(grid(lambda t: t ** (beta - 1.0), n), alpha, n) - exact))
    if beta == 1.0:
        assert max(errs) < 1e-13  # constants are integrated exactly
        return
    orders = [math.log2(e1 / e2) for e1, e2 in zip(errs, errs[1:])]
    assert min(orders) >= 1.45


def test_composition_with_integral():
    # D^0.8 I^1.8 f = I^1.0 f for smooth f
    f = grid(lambda t: np.cos(3 * t) + t**2, n=1024)
    g = f.with_values(rl_integral_all(f, 1.8))
    lhs = rl_integral_all(g, 0.2)  # D^0.8 = D^1 I^0.2
    d = np.gradient(lhs, f.h)
    rhs = rl_integral_all(f, 1.0)
    inner = slice(100, -100)
    assert np.max(np.abs(d[inner] - rhs[inner])) < 1e-4


def test_rl_derivative_examples():
    f = grid(np.sqrt, n=2048)
    d = rl_derivative_all(f, 1.5)
    inner = (f.t >= 0.1) & (f.t <= 0.9)
    assert np.max(np.abs(d[inner])) < 1e-3
    # rounding in I^(2-alpha) is amplified by 1/h^2 ~ 4e6
    assert rl_derivative(f, 1.5, 1024) == pytest.approx(d[1024], abs=1e-8)

    sq = grid(lambda t: t**2, n=2048)
    d2 = rl_derivative_all(sq, 2.0)
    assert np.allclose(d2[1:-1], 2.0, atol=1e-6)
    # Gamma(3)/Gamma(1.5) * 0.5**0.5
    assert rl_derivative(sq, 1.5, 1024) == pytest.approx(1.5957691216057307118, abs=1e-6)


def test_rl_derivative_index_and_order_errors():
    f = grid(np.sqrt, n=16)
    for i in (0, 1, 15, 16):
        with pytest.raises(DomainError):
            rl_derivative(f, 1.5, i)
    with pytest.raises(DomainError):
        rl_derivative(f, 1.0, 5)
    with pytest.raises(DomainError):
        rl_integral(f, -0.5, 3)


def test_flagged_input_refused():
    f = grid(lambda t: t**-0.5, n=16)
    with pytest.raises(DomainError):
        rl_integral(f, 0.5, 4)
    assert rl_integral(f, 0.0, 4) == f.values[4]


def test_power_rule_examples():
    assert power_rule_integral(0.0, 2.0, 0.0, 0.7) == pytest.approx(0.7)
    assert power_rule_derivative(1.5, 1.5, 0.0, 0.3) == 0.0
    assert power_rule_integral(1.5, 1.0, 0.0, 1.0) == pytest.approx(0.75225277806367504926, rel=1e-14)
    assert power_rule_derivative(1.5, 0.5, 0.0, 0.3) == 0.0  # (t-a)^(alpha-2) is annihilated too
    with pytest.raises(DomainError):
        power_rule_integral(1.0, 0.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        power_rule_derivative(1.0, 1.0, 1.0, 0.5)


@given(st.floats(0.0, 2.0), st.floats(0.2, 4.0), st.floats(0.01, 3.0))
def test_power_rule_round_trip(alpha, beta, x):
    # D^alpha I^alpha (t-a)^(beta-1) = (t-a)^(beta-1)
    c = power_rule_integral(alpha, beta, 0.0, x) / x ** (beta + alpha - 1.0)
    back = c * power_rule_derivative(alpha, beta + alpha, 0.0, x)
    assert back == pytest.approx(x ** (beta - 1.0), rel=1e-12)
