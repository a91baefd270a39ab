"""Green's function of the Robin problem

    D^alpha_a y + h = 0 on (a, b),
    I^(2-alpha)_a y(a) - D^(alpha-1)_a y(a) = 0,   y(b) + D^(alpha-1)_a y(b) = 0,

for 1 < alpha <= 2, together with its closed-form bounds and grid-search
oracles for the corresponding maxima.

    G(t, s) = phi(t) psi(s) - [s <= t] (t - s)**(alpha-1) / Gamma(alpha)
    phi(t)  = ((t - a)**(alpha-1) + (alpha-1)(t - a)**(alpha-2)) / A
    psi(s)  = (b - s)**(alpha-1) / Gamma(alpha) + 1
    A       = (b - a)**(alpha-1) + (alpha-1)(b - a)**(alpha-2) + Gamma(alpha)

The two closed-form "maximum" expressions are upper bounds on the weighted
quantities; they are not attained in general, and :class:`BoundReport` keeps
the bound and the grid maximum side by side.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DomainError

Mode = Literal["diagonal-weighted", "integral-weighted", "full-surface"]
MODES: tuple[str, ...] = ("diagonal-weighted", "integral-weighted", "full-surface")
DOMINATION_TOL = 1e-9


@dataclass(frozen=True)
class ProblemSpec:
    alpha: float
    a: float = 0.0
    b: float = 1.0

    def __post_init__(self):
        if not 1.0 < self.alpha <= 2.0:
            raise DomainError(f"alpha must lie in (1, 2], got {self.alpha}")
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.b > self.a):
            raise DomainError(f"need finite b > a, got a={self.a}, b={self.b}")

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def gamma_alpha(self) -> float:
        return math.gamma(self.alpha)


def _pow(x, p: float):
    """x**p for x >= 0 via exp(p log x); 0**p is 0 for p > 0 and 1 for p == 0."""
    x = np.asarray(x, dtype=float)
    if p == 0.0:
        return np.ones_like(x)
    with np.errstate(divide="ignore"):
        out = np.exp(p * np.log(x))
    return np.where(x > 0.0, out, 0.0 if p > 0 else np.inf)


def interior_mesh(spec: ProblemSpec, n: int) -> np.ndarray:
    """Nodes a + i (b - a)/n for i = 1..n, with the last one pinned to b."""
    t = spec.a + spec.length / n * np.arange(1, n + 1)
    t[-1] = spec.b
    return t


def constant_A(spec: ProblemSpec) -> float:
    L, al = spec.length, spec.alpha
    return L ** (al - 1.0) + (al - 1.0) * L ** (al - 2.0) + spec.gamma_alpha


def _check_domain(spec: ProblemSpec, t, s, allow_t_at_a: bool = False) -> None:
    t, s = np.asarray(t), np.asarray(s)
    lo_ok = (t >= spec.a) if allow_t_at_a else (t > spec.a)
    if not (np.all(lo_ok) and np.all(t <= spec.b) and np.all(s > spec.a) and np.all(s <= spec.b)):
        raise DomainError(f"G is defined on (a, b] x (a, b] with a={spec.a}, b={spec.b}")


def _psi(spec: ProblemSpec, s):
    return _pow(spec.b - np.asarray(s, dtype=float), spec.alpha - 1.0) / spec.gamma_alpha + 1.0


def _causal_kernel(spec: ProblemSpec, t, s):
    """(t - s)**(alpha-1) / Gamma(alpha) for s <= t, zero above the diagonal."""
    d = np.asarray(t, dtype=float) - np.asarray(s, dtype=float)
    return np.where(d > 0.0, _pow(np.maximum(d, 0.0), spec.alpha - 1.0), 0.0) / spec.gamma_alpha


def green_matrix(spec: ProblemSpec, t, s) -> np.ndarray:
    """G(t, s) with numpy broadcasting over ``t`` and ``s``."""
    _check_domain(spec, t, s)
    t = np.asarray(t, dtype=float)
    x = t - spec.a
    al = spec.alpha
    phi = (_pow(x, al - 1.0) + (al - 1.0) * _pow(x, al - 2.0)) / constant_A(spec)
    return phi * _psi(spec, s) - _causal_kernel(spec, t, s)


def weighted_green_matrix(spec: ProblemSpec, t, s) -> np.ndarray:
    """(t - a)**(2-alpha) G(t, s), broadcast; finite at t = a."""
    _check_domain(spec, t, s, allow_t_at_a=True)
    t = np.asarray(t, dtype=float)
    x = t - spec.a
    al = spec.alpha
    lead = (x + al - 1.0) / constant_A(spec) * _psi(spec, s)
    return lead - _pow(x, 2.0 - al) * _causal_kernel(spec, t, s)


def green_eval(spec: ProblemSpec, t: float, s: float) -> float:
    return float(green_matrix(spec, t, s))


def weighted_green_eval(spec: ProblemSpec, t: float, s: float) -> float:
    return float(weighted_green_matrix(spec, t, s))


def green_decomposition(spec: ProblemSpec, t: float, s: float) -> tuple[float, float, float, float]:
    """The four non-negative pieces (E, B, C, D) with A Gamma(alpha) G(t, s) = E + B + C + D, s <= t."""
    _check_domain(spec, t, s)
    if s > t:
        raise DomainError("decomposition holds on the lower branch s <= t")
    al, ga = spec.alpha, spec.gamma_alpha
    ta, bs, ts, ba = t - spec.a, spec.b - s, t - s, spec.length
    p1 = lambda x: float(_pow(x, al - 1.0))  # noqa: E731
    p2 = lambda x: float(_pow(x, al - 2.0))  # noqa: E731
    E = p1(ta) * p1(bs) - p1(ba) * p1(ts)
    B = (al - 1.0) * (p2(ta) * p1(bs) - p2(ba) * p1(ts))
    C = ga * (p1(ta) - p1(ts))
    D = (al - 1.0) * ga * p2(ta)
    return E, B, C, D


def diagonal_weighted(spec: ProblemSpec, t) -> np.ndarray:
    """(t - a)**(2-alpha) G(t, t) = (t - a + alpha - 1)/A * psi(t)."""
    t = np.asarray(t, dtype=float)
    return (t - spec.a + spec.alpha - 1.0) / constant_A(spec) * _psi(spec, t)


def integral_weighted(spec: ProblemSpec, t) -> np.ndarray:
    """Exact value of the integral over s in [a, b] of (t - a)**(2-alpha) G(t, s)."""
    t = np.asarray(t, dtype=float)
    L, al = spec.length, spec.alpha
    g1 = math.gamma(al + 1.0)
    x = t - spec.a
    return (x + al - 1.0) / constant_A(spec) * (L**al / g1 + L) - x**2 / g1


def paper_diag_bound(spec: ProblemSpec) -> float:
    """Certified upper bound on max_t (t - a)**(2-alpha) G(t, t)."""
    L, al = spec.length, spec.alpha
    return (L + al - 1.0) / constant_A(spec) * (L ** (al - 1.0) / spec.gamma_alpha + 1.0)


def paper_int_bound(spec: ProblemSpec) -> float:
    """Certified upper bound on max_t of the weighted row integral of G."""
    L, al = spec.length, spec.alpha
    return (L + al - 1.0) / constant_A(spec) * (L**al / math.gamma(al + 1.0) + L)


@dataclass(frozen=True)
class BoundReport:
    mode: str
    paper_bound: float
    grid_max: float
    argmax_t: float
    argmax_s: float | None
    attained: bool

    @property
    def dominated(self) -> bool:
        return self.grid_max <= self.paper_bound + DOMINATION_TOL


def grid_search_max(spec: ProblemSpec, mode: Mode, n: int, attain_rtol: float = 1e-9) -> BoundReport:
    """Brute-force maximum of a weighted Green's-function quantity on a uniform mesh.

    Nodes are t_i = a + i (b - a)/n for i = 1..n (the open left end is
    excluded).  Ties go to the smallest t, then the smallest s.
    """
    if n < 16:
        raise DomainError("grid search needs n >= 16")
    t = interior_mesh(spec, n)
    argmax_s = None
    if mode == "diagonal-weighted":
        vals = diagonal_weighted(spec, t)
        i = int(np.argmax(vals))
        grid_max, argmax_t, bound = float(vals[i]), float(t[i]), paper_diag_bound(spec)
    elif mode == "integral-weighted":
        vals = integral_weighted(spec, t)
        i = int(np.argmax(vals))
        grid_max, argmax_t, bound = float(vals[i]), float(t[i]), paper_int_bound(spec)
    elif mode == "full-surface":
        surf = weighted_green_matrix(spec, t[:, None], t[None, :])
        i, j = np.unravel_index(int(np.argmax(surf)), surf.shape)
        grid_max, argmax_t, argmax_s = float(surf[i, j]), float(t[i]), float(t[j])
        bound = paper_diag_bound(spec)
    else:
        raise DomainError(f"unknown mode {mode!r}; expected one of {MODES}")
    attained = abs(grid_max - bound) <= attain_rtol * max(1.0, abs(bound))
    return BoundReport(mode, bound, grid_max, argmax_t, argmax_s, attained)
