"""Grid-refinement study for the solver and the fractional quadrature.

For h(t) = t**(beta - 1) on [0, 1] the exact solution is known in closed form,
so the weighted error max |t**(2-alpha) (y - y_exact)|, the interior residual
and the power-rule error of I^alpha can be tabulated against n together with
observed convergence orders.

    python3 scripts/convergence_study.py --alpha 1.5 --beta 1.5
"""
from __future__ import annotations

import argparse
import math
from dataclasses import dataclass

import numpy as np

from rlrobin.bvp import forcing_from_spec, residual_interior, solve
from rlrobin.fraccalc import power_rule_integral, rl_integral
from rlrobin.green import ProblemSpec, constant_A


@dataclass(frozen=True)
class StudyConfig:
    alpha: float = 1.5
    beta: float = 1.5
    n_min: int = 256
    levels: int = 5
    delta: float = 0.1


def exact_solution(spec: ProblemSpec, beta: float, t: np.ndarray) -> np.ndarray:
    al = spec.alpha
    ib = math.gamma(beta) / math.gamma(beta + al)
    c1 = (ib + 1.0 / beta) / constant_A(spec)
    return -ib * t ** (beta + al - 1) + c1 * t ** (al - 1) + (al - 1) * c1 * t ** (al - 2)


def run(cfg: StudyConfig) -> list[tuple[int, float, float, float]]:
    spec = ProblemSpec(cfg.alpha, 0.0, 1.0)
    rows = []
    for level in range(cfg.levels):
        n = cfg.n_min * 2**level
        h = forcing_from_spec(f"power:{cfg.beta}", 0.0, 1.0, n)
        sol = solve(spec, h)
        t = sol.y.t[1:]
        err = float(np.max(np.abs(t ** (2 - cfg.alpha) * (sol.y.values[1:] - exact_solution(spec, cfg.beta, t)))))
        res = residual_interior(sol, cfg.delta)
        exact_int = power_rule_integral(cfg.alpha, cfg.beta, 0.0, 1.0)
        quad = abs(rl_integral(h, cfg.alpha, n) - exact_int) / exact_int
        rows.append((n, err, res, quad))
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--alpha", type=float, default=StudyConfig.alpha)
    parser.add_argument("--beta", type=float, default=StudyConfig.beta)
    parser.add_argument("--n-min", type=int, default=StudyConfig.n_min)
    parser.add_argument("--levels", type=int, default=StudyConfig.levels)
    args = parser.parse_args()
    cfg = StudyConfig(args.alpha, args.beta, args.n_min, args.levels)

    rows = run(cfg)
    print(f"alpha={cfg.alpha} beta={cfg.beta}")
    print(f"{'n':>7} {'weighted err':>13} {'order':>6} {'residual':>10} {'order':>6} {'I^a rel err':>12}")
    prev = None
    for row in rows:
        n, err, res, quad = row
        if prev is None:
            o1 = o2 = ""
        else:
            o1 = f"{math.log2(prev[1] / err):6.2f}" if err > 0 else "   -"
            o2 = f"{math.log2(prev[2] / res):6.2f}" if res > 0 else "   -"
        print(f"{n:7d} {err:13.3e} {o1:>6} {res:10.3e} {o2:>6} {quad:12.3e}")
        prev = row


if __name__ == "__main__":
    main()
