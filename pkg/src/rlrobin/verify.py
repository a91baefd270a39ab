"""Property checks behind the ``verify`` subcommand.

Each check returns a :class:`CheckResult`; nothing here raises on failure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fraccalc import GridFunction
from .green import MODES, ProblemSpec, green_matrix, grid_search_max, interior_mesh
from .lyapunov import (
    lyapunov_check,
    lyapunov_rhs,
    scan_roots,
    zero_free_bound,
    zero_free_function,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def random_specs(alpha: float | None, count: int, seed: int) -> list[ProblemSpec]:
    """Random problems with b - a in [0.1, 10]; alpha uniform in (1, 2] unless fixed."""
    rng = np.random.default_rng(seed)
    specs = []
    for _ in range(count):
        # 2 - U[0, 1) lies in (1, 2]
        al = float(2.0 - rng.random()) if alpha is None else float(alpha)
        a = float(rng.uniform(-5.0, 5.0))
        specs.append(ProblemSpec(al, a, a + float(rng.uniform(0.1, 10.0))))
    return specs


def mesh(spec: ProblemSpec, n: int) -> np.ndarray:
    return interior_mesh(spec, n)


def check_positivity(specs, n: int = 64) -> CheckResult:
    worst = math.inf
    for spec in specs:
        t = mesh(spec, n)
        worst = min(worst, float(np.min(green_matrix(spec, t[:, None], t[None, :]))))
    return CheckResult("green positivity", worst > 0.0, f"{len(specs)} specs, {n}x{n} mesh, min G = {worst:.3e}")


def check_domination(specs, n: int = 64) -> CheckResult:
    worst_gap = -math.inf
    failures = 0
    for spec in specs:
        for mode in MODES:
            rep = grid_search_max(spec, mode, n)
            worst_gap = max(worst_gap, rep.grid_max - rep.paper_bound)
            failures += not rep.dominated
    ref = grid_search_max(ProblemSpec(2.0, 0.0, 1.0), "diagonal-weighted", n)
    ref_ok = (not ref.attained) and abs(ref.grid_max - 0.75) <= 1e-12 and abs(ref.paper_bound - 4.0 / 3.0) <= 1e-12
    return CheckResult(
        "bound domination",
        failures == 0 and ref_ok,
        f"{len(specs)} specs x {len(MODES)} modes, max(grid - bound) = {worst_gap:.3e}; "
        f"alpha=2 diagonal max {ref.grid_max:.12g} vs bound {ref.paper_bound:.12g}, attained={ref.attained}",
    )


def check_consistency_chain(alpha: float, lambda_max: float = 30.0, n_scan: int = 1000) -> CheckResult:
    scan = scan_roots(alpha, lambda_max, n_scan, 1e-10)
    bound = zero_free_bound(alpha)
    spec = ProblemSpec(alpha, 0.0, 1.0)
    identity_err = abs(bound - (alpha - 1.0) * lyapunov_rhs(spec)) / bound
    met = []
    for lam in scan.roots:
        p = GridFunction(0.0, 1.0, np.full(257, abs(lam)))
        met.append(lyapunov_check(spec, p).necessary_condition_met)
    ok = all(r > bound for r in scan.roots) and all(met) and identity_err <= 1e-12
    return CheckResult(
        "lyapunov/eigenvalue chain",
        ok,
        f"alpha={alpha}: roots {[round(r, 10) for r in scan.roots]} vs bound {bound:.12g}, "
        f"identity rel err {identity_err:.1e}",
    )


def check_zero_free(alpha: float, points: int = 1001) -> CheckResult:
    bound = zero_free_bound(alpha)
    x = np.linspace(-bound, bound, points)
    F = zero_free_function(alpha, x)
    ok = bool(np.all(F > 0.0) or np.all(F < 0.0)) and float(np.min(np.abs(F))) > 0.0
    return CheckResult(
        "zero-free interval",
        ok,
        f"alpha={alpha}: {points} points on |x| <= {bound:.12g}, min |F| = {float(np.min(np.abs(F))):.6g}",
    )


def run_all(alpha: float, n_specs: int = 200, n_mesh: int = 64, seed: int = 0) -> list[CheckResult]:
    specs = random_specs(alpha, n_specs, seed)
    return [
        check_positivity(specs, n_mesh),
        check_domination(specs, n_mesh),
        check_consistency_chain(alpha),
        check_zero_free(alpha),
    ]
