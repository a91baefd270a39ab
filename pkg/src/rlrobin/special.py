"""Gamma-function helpers and real-argument Mittag-Leffler functions.

E_{a,b}(z) = sum_k z**k / Gamma(k*a + b) is summed directly (no asymptotic
branch), so arguments are limited to |z| <= Z_MAX.  For a close to 1 and z
strongly negative the largest term exceeds the result by up to fourteen
orders of magnitude, so the sum is carried in double-double arithmetic: the
reciprocal-gamma coefficients come from an extended-precision table (cached
per (a, b)), powers of z are formed with error-free products, and terms are
accumulated with error-free additions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import mpmath
import numpy as np

from .errors import DomainError, NonConvergenceError

Z_MAX = 50.0
DEFAULT_TOL = 1e-12
DEFAULT_MAX_TERMS = 10_000
# Largest tail ratio accepted as proof that the remaining terms are geometric.
RATIO_CAP = 0.5
_LOG_HUGE = 700.0
_EPS = np.finfo(float).eps


_EULER_GAMMA = 0.57721566490153286061
# zeta(k) - 1 for k = 2..60; the expansion below needs |x - 2| <= 1/2
_ZETA_M1 = tuple(float(mpmath.zeta(k) - 1) for k in range(2, 61))
# B_{2k} / (2k (2k - 1)), k = 1..8
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
_STIRLING_MIN = 15.0
_HALF_LOG_2PI = 0.91893853320467274178


def _log_gamma_near_two(eps: float) -> float:
    """ln Gamma(2 + eps) = (1 - gamma) eps + sum_k (-1)^k (zeta(k) - 1) eps^k / k."""
    total = 0.0
    power = -eps
    for k, zm1 in enumerate(_ZETA_M1, start=2):
        power *= -eps
        term = zm1 * power / k
        total += term
        if abs(term) < 1e-18 * abs(total):
            break
    return (1.0 - _EULER_GAMMA) * eps + total


def _log_gamma_stirling(x: float) -> float:
    inv = 1.0 / x
    inv2 = inv * inv
    corr = 0.0
    for c in reversed(_STIRLING):
        corr = corr * inv2 + c
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + corr * inv


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0.

    Near the zeros at 1 and 2 a zeta-function expansion about 2 keeps full
    relative accuracy; elsewhere the Stirling series is used after shifting
    the argument up to at least 15.
    """
    x = float(x)
    if not x > 0.0 or not math.isfinite(x):
        raise DomainError(f"log_gamma requires finite x > 0, got {x!r}")
    if x < 0.5:
        return log_gamma(x + 1.0) - math.log(x)
    if x < 1.5:
        return _log_gamma_near_two(x - 1.0) - math.log1p(x - 1.0)
    if x <= 2.5:
        return _log_gamma_near_two(x - 2.0)
    if x >= _STIRLING_MIN:
        return _log_gamma_stirling(x)
    shift = math.ceil(_STIRLING_MIN - x)
    prod = 1.0
    for j in range(shift):
        prod *= x + j
    return _log_gamma_stirling(x + shift) - math.log(prod)


def rgamma(x: float) -> float:
    """1/Gamma(x), zero at the poles x = 0, -1, -2, ..."""
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        return 0.0
    if x > 171.0:
        return 0.0 if x > 180.0 else math.exp(-math.lgamma(x))
    return 1.0 / math.gamma(x)


@dataclass(frozen=True)
class MLParams:
    alpha: float
    beta: float = 1.0
    tol: float = DEFAULT_TOL
    max_terms: int = DEFAULT_MAX_TERMS

    def __post_init__(self):
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise DomainError(f"Mittag-Leffler alpha must be > 0, got {self.alpha!r}")
        if not math.isfinite(self.beta):
            raise DomainError(f"Mittag-Leffler beta must be finite, got {self.beta!r}")
        if not self.tol > 0.0:
            raise DomainError(f"tol must be > 0, got {self.tol!r}")
        if int(self.max_terms) < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms!r}")


class _CoefTable(NamedTuple):
    hi: np.ndarray       # 1/Gamma(k a + b) as a double-double (hi + lo)
    lo: np.ndarray
    log_abs: np.ndarray  # ln|1/Gamma(k a + b)|, -inf at poles
    ratio: np.ndarray    # Gamma(k a + b)/Gamma((k+1) a + b); nan where not certified


@lru_cache(maxsize=256)
def _coef_table(alpha: float, beta: float, size: int) -> _CoefTable:
    hi = np.empty(size)
    lo = np.empty(size)
    log_abs = np.empty(size)
    ratio = np.full(size, np.nan)
    with mpmath.workdps(50):
        a, b = mpmath.mpf(alpha), mpmath.mpf(beta)
        for k in range(size):
            x = k * a + b
            r = mpmath.rgamma(x)
            hi[k] = float(r)
            lo[k] = float(r - hi[k])
            log_abs[k] = float(mpmath.log(abs(r))) if r != 0 else -np.inf
            # log-convexity of Gamma on (0, inf) makes this ratio non-increasing in k
            if x > 0:
                ratio[k] = float(mpmath.exp(mpmath.loggamma(x) - mpmath.loggamma(x + a)))
    for arr in (hi, lo, log_abs, ratio):
        arr.flags.writeable = False
    return _CoefTable(hi, lo, log_abs, ratio)


def _table(alpha: float, beta: float, needed: int) -> _CoefTable:
    size = 64
    while size < needed:
        size *= 2
    return _coef_table(float(alpha), float(beta), size)


def _check_z(z) -> None:
    if np.any(~np.isfinite(z)) or np.any(np.abs(z) > Z_MAX):
        raise DomainError(f"|z| must be finite and <= {Z_MAX}")


# Error-free transformations; written with operators only so they work on
# Python floats and numpy arrays alike.
_SPLITTER = 134217729.0  # 2**27 + 1
# beyond this the Veltkamp split overflows; such terms go through logs
_DD_LIMIT = 1e290


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_mul(ahi, alo, bhi, blo):
    p, e = _two_prod(ahi, bhi)
    e = e + (ahi * blo + alo * bhi)
    return _two_sum(p, e)


def _dd_add(ahi, alo, bhi, blo):
    s, e = _two_sum(ahi, bhi)
    e = e + (alo + blo)
    return _two_sum(s, e)


class MLResult(NamedTuple):
    value: float
    terms: int
    abs_sum: float      # sum of |t_k| over terms carried in double-double
    abs_sum_log: float  # sum of |t_k| over terms formed through logarithms

    @property
    def rounding_bound(self) -> float:
        """Conservative bound on the accumulated rounding error of ``value``."""
        return float(_EPS * abs(self.value) + 8 * _EPS**2 * self.abs_sum + 1e3 * _EPS * self.abs_sum_log)


def _log_term(table: _CoefTable, k: int, z: float) -> float:
    t = math.copysign(math.exp(k * math.log(abs(z)) + table.log_abs[k]), table.hi[k])
    return -t if z < 0 and k % 2 else t


def mittag_leffler_detailed(params: MLParams, z: float) -> MLResult:
    """Scalar evaluation returning the term count and the rounding gauge."""
    z = float(z)
    _check_z(z)
    alpha, beta, tol = params.alpha, params.beta, params.tol
    if z == 0.0:
        return MLResult(rgamma(beta), 1, abs(rgamma(beta)), 0.0)
    absz = abs(z)
    table = _table(alpha, beta, 64)
    s_hi = s_lo = abs_sum = abs_log = 0.0
    p_hi, p_lo = 1.0, 0.0  # z**k as a double-double
    for k in range(int(params.max_terms)):
        if k >= len(table.hi):
            table = _table(alpha, beta, k + 1)
        c_hi = table.hi[k]
        if c_hi == 0.0:
            t = 0.0
        elif abs(p_hi) < _DD_LIMIT and abs(c_hi) > 1.0 / _DD_LIMIT:
            t, t_lo = _dd_mul(c_hi, table.lo[k], p_hi, p_lo)
            s_hi, s_lo = _dd_add(s_hi, s_lo, t, t_lo)
            abs_sum += abs(t)
        else:
            t = _log_term(table, k, z)
            s_hi, s_lo = _dd_add(s_hi, s_lo, t, 0.0)
            abs_log += abs(t)
        if abs(p_hi) < _DD_LIMIT:
            p, e = _two_prod(p_hi, z)
            p_hi, p_lo = _two_sum(p, e + p_lo * z)
        at = abs(t)
        if at < tol:
            r = absz * table.ratio[k]
            if r <= RATIO_CAP and at * r / (1.0 - r) < tol:
                return MLResult(s_hi + s_lo, k + 1, abs_sum, abs_log)
    raise NonConvergenceError(
        f"E_{{{alpha},{beta}}}({z}) did not reach tol={tol} within {params.max_terms} terms"
    )


def mittag_leffler(params: MLParams, z: float) -> float:
    """Two-parameter Mittag-Leffler function E_{alpha,beta}(z) for real z.

    The series is truncated once the current term and the geometric bound on
    everything after it are both below ``params.tol``.  The one-parameter
    function is the ``beta=1`` case.

    >>> round(mittag_leffler(MLParams(1.0, 1.0), 1.0), 12)
    2.718281828459
    """
    return mittag_leffler_detailed(params, z).value


def mittag_leffler_array(params: MLParams, z) -> np.ndarray:
    """Vectorised E_{alpha,beta} over an array of real arguments.

    Same coefficients, arithmetic and stopping rule as :func:`mittag_leffler`;
    each entry stops accumulating once its own tail test passes.
    """
    z = np.asarray(z, dtype=float)
    _check_z(z)
    alpha, beta, tol = params.alpha, params.beta, params.tol
    shape = z.shape
    z = z.ravel()
    absz = np.abs(z)
    s_hi = np.zeros_like(z)
    s_lo = np.zeros_like(z)
    p_hi = np.ones_like(z)
    p_lo = np.zeros_like(z)
    active = absz > 0.0
    s_hi[~active] = rgamma(beta)
    table = _table(alpha, beta, 64)
    k = 0
    while np.any(active):
        if k >= params.max_terms:
            raise NonConvergenceError(
                f"E_{{{alpha},{beta}}} did not reach tol={tol} within {params.max_terms} terms"
            )
        if k >= len(table.hi):
            table = _table(alpha, beta, k + 1)
        idx = np.flatnonzero(active)
        zi, ph, pl = z[idx], p_hi[idx], p_lo[idx]
        c_hi = table.hi[k]
        if c_hi == 0.0:
            t = np.zeros(idx.size)
            t_lo = t
        else:
            dd = np.abs(ph) < _DD_LIMIT
            if abs(c_hi) <= 1.0 / _DD_LIMIT:
                dd[:] = False
            t, t_lo = _dd_mul(c_hi, table.lo[k], ph, pl)
            if not np.all(dd):
                with np.errstate(divide="ignore"):
                    lt = np.exp(k * np.log(np.abs(zi)) + table.log_abs[k]) * np.sign(c_hi)
                lt = np.where((zi < 0) & (k % 2 == 1), -lt, lt)
                t = np.where(dd, t, lt)
                t_lo = np.where(dd, t_lo, 0.0)
        s_hi[idx], s_lo[idx] = _dd_add(s_hi[idx], s_lo[idx], t, t_lo)
        grow = np.abs(ph) < _DD_LIMIT
        p, e = _two_prod(ph, zi)
        nh, nl = _two_sum(p, e + pl * zi)
        p_hi[idx] = np.where(grow, nh, ph)
        p_lo[idx] = np.where(grow, nl, pl)
        at = np.abs(t)
        r = absz[idx] * table.ratio[k]
        with np.errstate(invalid="ignore", divide="ignore"):
            done = (at < tol) & (r <= RATIO_CAP) & (at * r / (1.0 - r) < tol)
        active[idx[done]] = False
        k += 1
    return (s_hi + s_lo).reshape(shape)


def ml_terms(params: MLParams, z: float, count: int) -> np.ndarray:
    """The first ``count`` series terms z**k / Gamma(k alpha + beta), each evaluated on its own."""
    z = float(z)
    table = _table(params.alpha, params.beta, count)
    if z == 0.0:
        out = np.zeros(count)
        out[0] = table.hi[0]
        return out
    out = np.zeros(count)
    for k in range(count):
        if table.hi[k] != 0.0:
            out[k] = _log_term(table, k, z) if k * math.log(abs(z)) > 600 else table.hi[k] * z**k
    return out
