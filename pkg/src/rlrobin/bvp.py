"""Solution operator of the forced Robin problem and its verification.

The solution is assembled as

    y(t) = -I^alpha_a h(t) + c1 (t - a)**(alpha-1) + c2 (t - a)**(alpha-2),

    c1 = (I^alpha_a h(b) + I^1_a h(b)) / A,    c2 = (alpha - 1) c1,

with the two kernel terms carried as coefficients.  Both are annihilated by
D^alpha_a, so interior residuals differentiate only the smooth part.  A
second, independent route integrates G(t_i, .) against the piecewise-linear
interpolant of h with per-interval closed-form moments.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .fraccalc import GridFunction, rl_derivative_all, rl_integral, rl_integral_all
from .green import ProblemSpec, _pow, constant_A

MIN_RESIDUAL_GRID = 256
DEFAULT_DELTA = 0.1


@dataclass(frozen=True)
class BVPSolution:
    spec: ProblemSpec
    y: GridFunction
    c1: float
    c2: float
    h: GridFunction
    bc_residuals: tuple[float, float]

    def kernel_part(self, t) -> np.ndarray:
        """c1 (t - a)**(alpha-1) + c2 (t - a)**(alpha-2) at t > a."""
        x = np.asarray(t, dtype=float) - self.spec.a
        al = self.spec.alpha
        return self.c1 * _pow(x, al - 1.0) + self.c2 * _pow(x, al - 2.0)


def _check_forcing(spec: ProblemSpec, h: GridFunction) -> None:
    if not (math.isclose(h.a, spec.a) and math.isclose(h.b, spec.b)):
        raise DomainError(f"forcing grid [{h.a}, {h.b}] does not match [{spec.a}, {spec.b}]")
    if h.flagged:
        raise DomainError("forcing h must be finite on [a, b]")


def _stride(n: int, n_out: int | None) -> int:
    if n_out is None:
        return 1
    if n_out < 2 or n % n_out:
        raise DomainError(f"n_out={n_out} must be >= 2 and divide the forcing grid size {n}")
    return n // n_out


def solve(spec: ProblemSpec, h: GridFunction, n_out: int | None = None) -> BVPSolution:
    """Solve D^alpha y + h = 0 with the Robin conditions; y is reported on n_out + 1 nodes."""
    _check_forcing(spec, h)
    stride = _stride(h.n, n_out)
    al = spec.alpha
    i_alpha = rl_integral_all(h, al)
    i_one_b = rl_integral(h, 1.0, h.n)
    c1 = (i_alpha[-1] + i_one_b) / constant_A(spec)
    c2 = (al - 1.0) * c1

    x = h.t - spec.a
    y = np.empty(h.n + 1)
    y[1:] = -i_alpha[1:] + c1 * x[1:] ** (al - 1.0) + c2 * x[1:] ** (al - 2.0)
    if al == 2.0:
        y[0] = c2
    else:
        y[0] = np.nan if c2 != 0.0 else 0.0
    y_grid = GridFunction(spec.a, spec.b, y[::stride])

    gamma_al = math.gamma(al)
    r1 = c2 * math.gamma(al - 1.0) - c1 * gamma_al
    r2 = y[-1] - i_one_b + c1 * gamma_al
    return BVPSolution(spec, y_grid, c1, c2, h, (r1, r2))


def bc_residuals(sol: BVPSolution) -> tuple[float, float]:
    """Left and right Robin residuals recomputed from the stored solution.

    Left:  I^(2-alpha) y(a) - D^(alpha-1) y(a) = c2 Gamma(alpha-1) - c1 Gamma(alpha).
    Right: y(b) + D^(alpha-1) y(b) = y(b) - I^1 h(b) + c1 Gamma(alpha).
    """
    al = sol.spec.alpha
    gamma_al = math.gamma(al)
    left = sol.c2 * math.gamma(al - 1.0) - sol.c1 * gamma_al
    right = sol.y.values[-1] - rl_integral(sol.h, 1.0, sol.h.n) + sol.c1 * gamma_al
    return float(left), float(right)


def residual_interior(sol: BVPSolution, delta_fraction: float = DEFAULT_DELTA) -> float:
    """max |D^alpha y + h| over nodes in [a + delta, b - delta], delta = delta_fraction (b - a)."""
    if not 0.0 < delta_fraction < 0.5:
        raise DomainError("delta_fraction must lie in (0, 0.5)")
    y = sol.y
    if y.n < MIN_RESIDUAL_GRID:
        warnings.warn(f"grid n={y.n} < {MIN_RESIDUAL_GRID}: interior residual is unreliable", stacklevel=2)
    smooth = np.zeros(y.n + 1)
    smooth[1:] = y.values[1:] - sol.kernel_part(y.t[1:])
    d_alpha = rl_derivative_all(y.with_values(smooth), sol.spec.alpha)
    h_vals = sol.h.values[:: sol.h.n // y.n]
    delta = delta_fraction * sol.spec.length
    t = y.t
    mask = (t >= sol.spec.a + delta - 1e-12) & (t <= sol.spec.b - delta + 1e-12)
    mask[[0, -1]] = False
    if not np.any(mask):
        raise DomainError("no interior nodes inside the residual window")
    return float(np.max(np.abs(d_alpha[mask] + h_vals[mask])))


def _hat_moments(p: float, d0: np.ndarray, d1: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Integrals of d**p against the two hat pieces of one interval, in the distance variable.

    The interval [s_k, s_k+1] maps to d in [d1, d0] (d0 > d1 >= 0).  Returns
    the moments against (d - d1)/h and (d0 - d)/h: the hat functions of
    node k and node k+1 respectively.
    """
    m1 = (_pow(d0, p + 1.0) - _pow(d1, p + 1.0)) / (p + 1.0)
    m2 = (_pow(d0, p + 2.0) - _pow(d1, p + 2.0)) / (p + 2.0)
    return (m2 - d1 * m1) / h, (d0 * m1 - m2) / h


def green_weights(spec: ProblemSpec, n: int, out_idx) -> np.ndarray:
    """Matrix W with y(t_i) = sum_j W[i, j] h_j for piecewise-linear h on n uniform intervals."""
    out_idx = np.asarray(out_idx, dtype=int)
    if np.any(out_idx < 1) or np.any(out_idx > n):
        raise DomainError("output nodes must satisfy a < t_i <= b")
    al, ga = spec.alpha, math.gamma(spec.alpha)
    hstep = spec.length / n
    nodes = spec.a + hstep * np.arange(n + 1)
    k = np.arange(n)

    # psi(s) = (b - s)**(alpha-1)/Gamma(alpha) + 1, same for every row
    d0, d1 = spec.b - nodes[k], spec.b - nodes[k + 1]
    w_k, w_k1 = _hat_moments(al - 1.0, d0, d1, hstep)
    psi_w = np.zeros(n + 1)
    np.add.at(psi_w, k, w_k / ga + 0.5 * hstep)
    np.add.at(psi_w, k + 1, w_k1 / ga + 0.5 * hstep)

    x = nodes[out_idx] - spec.a
    phi = (_pow(x, al - 1.0) + (al - 1.0) * _pow(x, al - 2.0)) / constant_A(spec)
    W = phi[:, None] * psi_w[None, :]

    # causal kernel (t_i - s)**(alpha-1)/Gamma(alpha) on intervals k < i
    ti = nodes[out_idx][:, None]
    d0 = ti - nodes[k][None, :]
    d1 = ti - nodes[k + 1][None, :]
    live = k[None, :] < out_idx[:, None]
    d0, d1 = np.where(live, d0, 1.0), np.where(live, np.maximum(d1, 0.0), 1.0)
    w_k, w_k1 = _hat_moments(al - 1.0, d0, d1, hstep)
    W[:, :-1] -= np.where(live, w_k, 0.0) / ga
    W[:, 1:] -= np.where(live, w_k1, 0.0) / ga
    return W


def solve_direct(spec: ProblemSpec, h: GridFunction, n_out: int | None = None) -> np.ndarray:
    """y at nodes 1..n_out of the output grid by direct quadrature of G(t, s) h(s)."""
    _check_forcing(spec, h)
    stride = _stride(h.n, n_out)
    out_idx = np.arange(stride, h.n + 1, stride)
    return green_weights(spec, h.n, out_idx) @ h.values


def forcing_from_spec(text: str, a: float, b: float, n: int) -> GridFunction:
    """Built-in forcing from ``const:C`` or ``power:BETA`` ((t - a)**(BETA-1))."""
    kind, _, arg = text.partition(":")
    try:
        value = float(arg)
    except ValueError:
        raise DomainError(f"cannot parse forcing {text!r}") from None
    if kind == "const":
        return GridFunction.sample(lambda t: np.full_like(t, value), a, b, n)
    if kind == "power":
        if value < 1.0:
            raise DomainError("power forcing needs beta >= 1 to stay finite at t = a")
        return GridFunction.sample(lambda t: (t - a) ** (value - 1.0), a, b, n)
    raise DomainError(f"unknown forcing kind {kind!r}; use const:C or power:BETA")
