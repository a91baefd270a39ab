"""Weighted Lyapunov-type inequality and the Mittag-Leffler eigenvalue problem.

A nontrivial solution of D^alpha y + p y = 0 with the Robin conditions forces

    int_a^b (s - a)**(alpha-2) |p(s)| ds  >  A Gamma(alpha) / ([L**(alpha-1) + Gamma(alpha)] (L + alpha - 1)),

L = b - a.  On (0, 1) with p = lambda the eigenvalues are the real zeros of

    F(lambda) = E_alpha(-lambda) + (1 - lambda) E_{alpha,alpha}(-lambda) + E_{alpha,alpha-1}(-lambda),

and the inequality rules out every zero with |lambda| <= zero_free_bound(alpha).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .fraccalc import GridFunction, rl_integral
from .green import ProblemSpec, constant_A
from .special import (
    DEFAULT_TOL,
    MLParams,
    Z_MAX,
    mittag_leffler,
    mittag_leffler_array,
    mittag_leffler_detailed,
)

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class LyapunovCheck:
    spec: ProblemSpec
    weighted_integral: float
    rhs: float
    necessary_condition_met: bool


def lyapunov_rhs(spec: ProblemSpec) -> float:
    L, al, ga = spec.length, spec.alpha, spec.gamma_alpha
    return constant_A(spec) * ga / ((L ** (al - 1.0) + ga) * (L + al - 1.0))


def weighted_abs_integral(spec: ProblemSpec, p: GridFunction) -> float:
    """int_a^b (s - a)**(alpha-2) |p(s)| ds with exact weight moments against linear |p|.

    Reflecting s -> a + b - s turns the left weight into the kernel of a
    left-sided fractional integral of order alpha - 1 evaluated at b.
    """
    vals = np.abs(p.values)
    if p.flagged:
        warnings.warn(
            "p is non-finite at s = a; the weight already carries the admissible "
            "singularity, extrapolating p(a) linearly from the next two nodes",
            RuntimeWarning,
            stacklevel=3,
        )
        vals = vals.copy()
        vals[0] = max(2.0 * vals[1] - vals[2], 0.0)
    order = spec.alpha - 1.0
    reflected = GridFunction(p.a, p.b, vals[::-1])
    return math.gamma(order) * rl_integral(reflected, order, p.n)


def lyapunov_check(spec: ProblemSpec, p: GridFunction) -> LyapunovCheck:
    """Evaluate the necessary condition for a nontrivial solution with coefficient p."""
    if not (math.isclose(p.a, spec.a) and math.isclose(p.b, spec.b)):
        raise DomainError(f"p grid [{p.a}, {p.b}] does not match [{spec.a}, {spec.b}]")
    integral = weighted_abs_integral(spec, p)
    rhs = lyapunov_rhs(spec)
    # strict inequality: equality does not meet the condition
    return LyapunovCheck(spec, integral, rhs, bool(integral > rhs))


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 1.0 < alpha <= 2.0:
        raise DomainError(f"alpha must lie in (1, 2], got {alpha}")
    return alpha


def _ml_triplet(alpha: float, tol: float):
    return MLParams(alpha, 1.0, tol), MLParams(alpha, alpha, tol), MLParams(alpha, alpha - 1.0, tol)


def characteristic(alpha: float, lam: float, tol: float = DEFAULT_TOL) -> float:
    """F(lambda); its real zeros are the eigenvalues of the unit-interval Robin problem."""
    alpha = _check_alpha(alpha)
    p1, pa, pb = _ml_triplet(alpha, tol)
    z = -float(lam)
    return mittag_leffler(p1, z) + (1.0 - lam) * mittag_leffler(pa, z) + mittag_leffler(pb, z)


def characteristic_array(alpha: float, lam, tol: float = DEFAULT_TOL) -> np.ndarray:
    alpha = _check_alpha(alpha)
    lam = np.asarray(lam, dtype=float)
    p1, pa, pb = _ml_triplet(alpha, tol)
    z = -lam
    return mittag_leffler_array(p1, z) + (1.0 - lam) * mittag_leffler_array(pa, z) + mittag_leffler_array(pb, z)


def zero_free_function(alpha: float, x, tol: float = DEFAULT_TOL) -> np.ndarray:
    """E_alpha(x) + (1 - x) E_{alpha,alpha}(x) + E_{alpha,alpha-1}(x), the form stated for real x."""
    alpha = _check_alpha(alpha)
    x = np.asarray(x, dtype=float)
    p1, pa, pb = _ml_triplet(alpha, tol)
    return mittag_leffler_array(p1, x) + (1.0 - x) * mittag_leffler_array(pa, x) + mittag_leffler_array(pb, x)


def zero_free_bound(alpha: float) -> float:
    alpha = _check_alpha(alpha)
    ga = math.gamma(alpha)
    return (alpha - 1.0) * (alpha + ga) * ga / (alpha * (1.0 + ga))


def characteristic_noise(alpha: float, lam: float, tol: float = DEFAULT_TOL) -> float:
    """Rounding gauge for F(lambda): eps times the absolute series sums, weighted as in F."""
    p1, pa, pb = _ml_triplet(_check_alpha(alpha), tol)
    z = -float(lam)
    parts = [mittag_leffler_detailed(p, z).rounding_bound for p in (p1, pa, pb)]
    return parts[0] + abs(1.0 - lam) * parts[1] + parts[2]


@dataclass(frozen=True)
class RootScan:
    alpha: float
    lambda_min: float
    lambda_max: float
    n_scan: int
    tol: float
    brackets: list[tuple[float, float]] = field(default_factory=list)
    roots: list[float] = field(default_factory=list)
    suspected_tangencies: list[float] = field(default_factory=list)
    scale: float = 0.0
    noise_floor: float = 0.0


def _bisect(f, lo: float, hi: float, f_lo: float, tol: float) -> float:
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def scan_roots(
    alpha: float,
    lambda_max: float,
    n_scan: int = 1000,
    tol: float = 1e-10,
    lambda_min: float | None = None,
    ml_tol: float = DEFAULT_TOL,
) -> RootScan:
    """Bracket sign changes of F on a uniform grid and refine each by bisection.

    By default the grid starts just inside the certified zero-free interval,
    at -0.999 * zero_free_bound(alpha); pass ``lambda_min`` to go further.
    Near-zero values without a sign change are listed as suspected
    tangencies and not refined.
    """
    alpha = _check_alpha(alpha)
    if n_scan < 100:
        raise DomainError("n_scan must be >= 100")
    if not tol > 0.0:
        raise DomainError("tol must be > 0")
    lo = -0.999 * zero_free_bound(alpha) if lambda_min is None else float(lambda_min)
    hi = float(lambda_max)
    if not (abs(hi) <= Z_MAX and abs(lo) <= Z_MAX and hi > lo):
        raise DomainError(f"scan interval [{lo}, {hi}] must lie inside |lambda| <= {Z_MAX}")

    lam = np.linspace(lo, hi, n_scan)
    F = characteristic_array(alpha, lam, ml_tol)
    scale = float(np.max(np.abs(F)))
    noise = max(characteristic_noise(alpha, lo, ml_tol), characteristic_noise(alpha, hi, ml_tol))

    def f(x: float) -> float:
        return characteristic(alpha, x, ml_tol)

    brackets, roots = [], []
    for i in range(n_scan - 1):
        if F[i] == 0.0:
            brackets.append((float(lam[i]), float(lam[i])))
            roots.append(float(lam[i]))
        elif F[i] * F[i + 1] < 0.0:
            brackets.append((float(lam[i]), float(lam[i + 1])))
            roots.append(_bisect(f, float(lam[i]), float(lam[i + 1]), float(F[i]), tol))
            if max(abs(F[i]), abs(F[i + 1])) < noise:
                warnings.warn(
                    f"sign change in [{lam[i]:.6g}, {lam[i + 1]:.6g}] is below the rounding floor {noise:.2e}",
                    RuntimeWarning,
                    stacklevel=2,
                )
    if F[-1] == 0.0:
        brackets.append((float(lam[-1]), float(lam[-1])))
        roots.append(float(lam[-1]))

    tangency_level = max(1e3 * _EPS, noise)
    absF = np.abs(F)
    suspected = []
    for i in range(1, n_scan - 1):
        local_min = absF[i] <= absF[i - 1] and absF[i] <= absF[i + 1]
        no_change = F[i - 1] * F[i] > 0.0 and F[i] * F[i + 1] > 0.0
        if local_min and no_change and absF[i] < tangency_level:
            suspected.append(float(lam[i]))
    if suspected:
        warnings.warn(f"possible tangent zeros near {suspected}; not refined", RuntimeWarning, stacklevel=2)

    return RootScan(alpha, lo, hi, n_scan, tol, brackets, roots, suspected, scale, noise)


def eigenfunction(alpha: float, lam: float, t: float, tol: float = DEFAULT_TOL) -> float:
    """t**(alpha-1) E_{alpha,alpha}(-lambda t**alpha) + t**(alpha-2) E_{alpha,alpha-1}(-lambda t**alpha)."""
    alpha = _check_alpha(alpha)
    t = float(t)
    if not 0.0 < t <= 1.0:
        raise DomainError(f"eigenfunction is defined for t in (0, 1], got {t}")
    _, pa, pb = _ml_triplet(alpha, tol)
    z = -lam * t**alpha
    return t ** (alpha - 1.0) * mittag_leffler(pa, z) + t ** (alpha - 2.0) * mittag_leffler(pb, z)
