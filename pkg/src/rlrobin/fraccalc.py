"""Riemann-Liouville fractional integrals and derivatives on uniform grids.

The integral uses the product-trapezoidal rule: the sampled function is
replaced by its piecewise-linear interpolant and the kernel (t - s)**(alpha-1)
is integrated against each hat function in closed form.  For node t_n = a + n h

    I^alpha f(t_n) ~ h**alpha / Gamma(alpha + 2) * sum_j w_{n,j} f_j

with w_{n,0} = (n-1)**(alpha+1) - (n-1-alpha) n**alpha, w_{n,n} = 1 and
w_{n,j} = (m+1)**(alpha+1) - 2 m**(alpha+1) + (m-1)**(alpha+1), m = n - j.
The rule is exact for piecewise-linear data, including alpha = 1 (trapezoid).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .special import rgamma


@dataclass(frozen=True)
class GridFunction:
    """Samples of a real function at t_i = a + i (b - a) / n, i = 0..n.

    Only ``values[0]`` may be non-finite; such a grid is *flagged* and stands
    for a function in a weighted space that blows up at the left endpoint.
    """

    a: float
    b: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.b > self.a):
            raise DomainError(f"grid needs finite b > a, got a={self.a}, b={self.b}")
        if vals.ndim != 1 or vals.size < 3:
            raise DomainError("grid needs n >= 2 subintervals")
        if not np.all(np.isfinite(vals[1:])):
            raise DomainError("grid values must be finite away from the left endpoint")

    @property
    def n(self) -> int:
        return self.values.size - 1

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n

    @property
    def t(self) -> np.ndarray:
        return self.a + self.h * np.arange(self.n + 1)

    @property
    def flagged(self) -> bool:
        return not math.isfinite(self.values[0])

    @classmethod
    def sample(cls, func, a: float, b: float, n: int) -> "GridFunction":
        """Sample ``func`` (vectorised over numpy arrays) on n + 1 uniform nodes."""
        if n < 2:
            raise DomainError("n must be >= 2")
        t = a + (b - a) / n * np.arange(n + 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = np.asarray(func(t), dtype=float) * np.ones_like(t)
        if not math.isfinite(vals[0]):
            vals[0] = np.nan
        return cls(a, b, vals)

    def with_values(self, values) -> "GridFunction":
        return GridFunction(self.a, self.b, values)

    def __add__(self, other: "GridFunction") -> "GridFunction":
        self._check_same_grid(other)
        return self.with_values(self.values + other.values)

    def __mul__(self, c: float) -> "GridFunction":
        return self.with_values(self.values * float(c))

    __rmul__ = __mul__

    def _check_same_grid(self, other: "GridFunction") -> None:
        if (self.a, self.b, self.n) != (other.a, other.b, other.n):
            raise DomainError("grid functions live on different grids")


@dataclass(frozen=True)
class WeightedFunction:
    """A member of C_gamma[a, b], stored through its weighted samples (t - a)**gamma y(t)."""

    gamma: float
    grid: GridFunction

    def __post_init__(self):
        if not 0.0 <= self.gamma < 1.0:
            raise DomainError(f"weight exponent must lie in [0, 1), got {self.gamma}")
        if self.grid.flagged:
            raise DomainError("weighted samples must all be finite")

    @classmethod
    def from_function(cls, y: GridFunction, gamma: float, limit_at_a: float | None = None):
        """Weight the samples of ``y``; a flagged left value needs its weighted limit supplied."""
        w = (y.t - y.a) ** gamma * np.where(np.isfinite(y.values), y.values, 0.0)
        if y.flagged:
            if limit_at_a is None:
                raise DomainError("flagged grid: supply the weighted limit at t = a")
            w[0] = limit_at_a
        return cls(gamma, y.with_values(w))

    def norm(self) -> float:
        """The C_gamma norm max |(t - a)**gamma y(t)| over the grid."""
        return float(np.max(np.abs(self.grid.values)))


def _second_difference_powers(p: float, m: np.ndarray) -> np.ndarray:
    """(m+1)**p - 2 m**p + (m-1)**p for integers m >= 1, without cancellation.

    Written as m**p [expm1(p log1p(1/m)) + expm1(p log1p(-1/m))]; the leading
    +-p/m parts still cancel, but only about log10(m) digits are lost.
    """
    m = np.asarray(m, dtype=float)
    out = np.empty_like(m)
    one = m == 1.0
    out[one] = 2.0**p - 2.0
    mm = m[~one]
    x = 1.0 / mm
    out[~one] = mm**p * (np.expm1(p * np.log1p(x)) + np.expm1(p * np.log1p(-x)))
    return out


def _check_order(alpha: float) -> float:
    alpha = float(alpha)
    if not alpha >= 0.0 or not math.isfinite(alpha):
        raise DomainError(f"fractional order must be >= 0, got {alpha!r}")
    return alpha


def _require_unflagged(f: GridFunction) -> None:
    if f.flagged:
        raise DomainError("operation needs f(a); grid is flagged non-finite at t = a")


def rl_integral(f: GridFunction, alpha: float, t_index: int) -> float:
    """(I^alpha_a f)(t_i) by the product-trapezoidal rule; alpha = 0 is the identity."""
    alpha = _check_order(alpha)
    i = int(t_index)
    if not 0 <= i <= f.n:
        raise DomainError(f"t_index {i} outside 0..{f.n}")
    if alpha == 0.0:
        return float(f.values[i])
    _require_unflagged(f)
    if i == 0:
        return 0.0
    p = alpha + 1.0
    w = np.empty(i + 1)
    w[0] = (i - 1) ** p - (i - 1 - alpha) * i**alpha
    w[i] = 1.0
    if i > 1:
        w[1:i] = _second_difference_powers(p, np.arange(i - 1, 0, -1))
    scale = f.h**alpha * rgamma(alpha + 2.0)
    return float(scale * np.dot(w, f.values[: i + 1]))


def rl_integral_all(f: GridFunction, alpha: float) -> np.ndarray:
    """I^alpha_a f at every node; agrees with :func:`rl_integral` node by node."""
    alpha = _check_order(alpha)
    if alpha == 0.0:
        return f.values.copy()
    _require_unflagged(f)
    n = f.n
    p = alpha + 1.0
    y = f.values
    idx = np.arange(1, n + 1, dtype=float)
    # interior weights depend only on m = i - j, so the sum is a convolution
    c = np.zeros(n + 1)
    c[1:n] = _second_difference_powers(p, np.arange(1, n))
    conv = np.convolve(c, y[: n + 1])[: n + 1]  # conv[i] = sum_j c[i-j] y[j]
    # j = 0 carries an endpoint weight instead of c[i]
    out = np.zeros(n + 1)
    w0 = (idx - 1) ** p - (idx - 1 - alpha) * idx**alpha
    out[1:] = conv[1:] - c[1:] * y[0] + w0 * y[0] + y[1:]
    return f.h**alpha * rgamma(alpha + 2.0) * out


def rl_derivative(f: GridFunction, alpha: float, t_index: int) -> float:
    """(D^alpha_a f)(t_i) for 1 < alpha <= 2 as the central second difference of I^(2-alpha) f."""
    alpha = float(alpha)
    if not 1.0 < alpha <= 2.0:
        raise DomainError(f"derivative order must lie in (1, 2], got {alpha}")
    i = int(t_index)
    if not 2 <= i <= f.n - 2:
        raise DomainError(f"t_index {i} needs room for central differencing (2..{f.n - 2})")
    g = [rl_integral(f, 2.0 - alpha, j) for j in (i - 1, i, i + 1)]
    return (g[0] - 2.0 * g[1] + g[2]) / f.h**2


def rl_derivative_all(f: GridFunction, alpha: float) -> np.ndarray:
    """D^alpha_a f on nodes 1..n-1 (nan elsewhere), vectorised over the grid."""
    alpha = float(alpha)
    if not 1.0 < alpha <= 2.0:
        raise DomainError(f"derivative order must lie in (1, 2], got {alpha}")
    g = rl_integral_all(f, 2.0 - alpha)
    out = np.full(f.n + 1, np.nan)
    out[1:-1] = (g[:-2] - 2.0 * g[1:-1] + g[2:]) / f.h**2
    return out


def _power_args(beta: float, a: float, t: float) -> float:
    if not beta > 0.0:
        raise DomainError(f"power-rule exponent beta must be > 0, got {beta}")
    if t < a:
        raise DomainError(f"power rule needs t >= a, got t={t} < a={a}")
    return t - a


def power_rule_integral(alpha: float, beta: float, a: float, t: float) -> float:
    """Exact I^alpha_a (t - a)**(beta - 1) = Gamma(beta)/Gamma(beta + alpha) (t - a)**(beta + alpha - 1)."""
    alpha = _check_order(alpha)
    x = _power_args(beta, a, t)
    if alpha == 0.0:
        return x ** (beta - 1.0)
    return math.gamma(beta) * rgamma(beta + alpha) * x ** (beta + alpha - 1.0)


def power_rule_derivative(alpha: float, beta: float, a: float, t: float) -> float:
    """Exact D^alpha_a (t - a)**(beta - 1); zero when beta - alpha is a pole of Gamma."""
    alpha = _check_order(alpha)
    x = _power_args(beta, a, t)
    c = rgamma(beta - alpha)
    if c == 0.0:
        return 0.0
    return math.gamma(beta) * c * x ** (beta - alpha - 1.0)
