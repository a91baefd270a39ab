"""Command-line front end.

    rlrobin ml --alpha 1.5 --beta 1.5 --z -1 0 1
    rlrobin green --alpha 1.5 --n 32 > mesh.csv
    rlrobin solve --alpha 1.5 --h power:1.5 --out y.csv      # also writes y.csv.json
    rlrobin lyapunov --alpha 2 --p const:1
    rlrobin eig --alpha 1.5 --lambda-max 30
    rlrobin verify --alpha 1.5

Scalar results are a JSON envelope with sorted keys and floats rounded to 12
significant digits; meshes and functions are CSV.  Exit codes: 0 ok,
2 domain/validation error, 3 non-convergence, 4 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings

import numpy as np

from . import __version__
from .bvp import forcing_from_spec, residual_interior, solve
from .errors import DomainError, ToolkitError
from .fraccalc import GridFunction
from .green import ProblemSpec, green_matrix, interior_mesh, weighted_green_matrix
from .lyapunov import characteristic, lyapunov_check, scan_roots, zero_free_bound
from .special import DEFAULT_MAX_TERMS, DEFAULT_TOL, MLParams, mittag_leffler
from .verify import run_all

FLOAT_FMT = "%.12g"
UNIFORM_RTOL = 1e-9


def _clean(obj):
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return float(FLOAT_FMT % x) if math.isfinite(x) else None
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_clean(v) for v in obj]
    return obj


def envelope(command: str, parameters: dict, results, grid_n: int) -> str:
    doc = {
        "command": command,
        "parameters": parameters,
        "results": results,
        "toolkit_version": __version__,
        "grid_n": grid_n,
    }
    return json.dumps(_clean(doc), sort_keys=True, indent=2)


def read_grid_csv(path: str) -> GridFunction:
    """Read a ``t,<name>`` CSV on a uniform grid; 'nan' is allowed only in the first row."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or len(rows[0]) != 2 or rows[0][0].strip() != "t":
        raise DomainError(f"{path}: expected header 't,<name>'")
    try:
        data = np.array([[float(c) for c in row] for row in rows[1:] if row], dtype=float)
    except ValueError as exc:
        raise DomainError(f"{path}: {exc}") from None
    if data.ndim != 2 or data.shape[0] < 3 or data.shape[1] != 2:
        raise DomainError(f"{path}: need at least three rows of two columns")
    t = data[:, 0]
    steps = np.diff(t)
    h = (t[-1] - t[0]) / (t.size - 1)
    if not np.all(np.abs(steps - h) <= UNIFORM_RTOL * max(abs(h), abs(t[-1]), abs(t[0]))):
        raise DomainError(f"{path}: nodes are not uniformly spaced")
    return GridFunction(float(t[0]), float(t[-1]), data[:, 1])


def write_csv(stream, header: list[str], columns) -> None:
    stream.write(",".join(header) + "\n")
    for row in zip(*columns):
        stream.write(",".join(FLOAT_FMT % v for v in row) + "\n")


def _function_arg(text: str, a: float, b: float, n: int) -> GridFunction:
    if text.startswith("csv:"):
        g = read_grid_csv(text[4:])
        if not (math.isclose(g.a, a, abs_tol=1e-12) and math.isclose(g.b, b, abs_tol=1e-12)):
            raise DomainError(f"CSV grid spans [{g.a}, {g.b}], expected [{a}, {b}]")
        return g
    return forcing_from_spec(text, a, b, n)


def cmd_ml(args, out) -> int:
    params = MLParams(args.alpha, args.beta, args.tol, args.max_terms)
    values = [mittag_leffler(params, z) for z in args.z]
    results = {"z": args.z, "E": values}
    out.write(envelope("ml", vars_of(args), results, 0) + "\n")
    return 0


def cmd_green(args, out) -> int:
    spec = ProblemSpec(args.alpha, args.a, args.b)
    t = interior_mesh(spec, args.n)
    T, S = np.meshgrid(t, t, indexing="ij")
    G = green_matrix(spec, T, S)
    WG = weighted_green_matrix(spec, T, S)
    write_csv(out, ["t", "s", "G", "weighted_G"], [T.ravel(), S.ravel(), G.ravel(), WG.ravel()])
    return 0


def cmd_solve(args, out) -> int:
    spec = ProblemSpec(args.alpha, args.a, args.b)
    h = _function_arg(args.h, spec.a, spec.b, args.n)
    sol = solve(spec, h, args.n_out)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        interior = residual_interior(sol, args.delta)
    with open(args.out, "w") as fh:
        write_csv(fh, ["t", "y"], [sol.y.t, sol.y.values])
    results = {
        "c1": sol.c1,
        "c2": sol.c2,
        "bc_residuals": list(sol.bc_residuals),
        "interior_residual": interior,
    }
    sidecar = args.out + ".json"
    with open(sidecar, "w") as fh:
        fh.write(envelope("solve", vars_of(args), results, h.n) + "\n")
    out.write(f"wrote {args.out} and {sidecar}\n")
    return 0


def cmd_lyapunov(args, out) -> int:
    spec = ProblemSpec(args.alpha, args.a, args.b)
    p = _function_arg(args.p, spec.a, spec.b, args.n)
    chk = lyapunov_check(spec, p)
    results = {
        "alpha": spec.alpha,
        "a": spec.a,
        "b": spec.b,
        "weighted_integral": chk.weighted_integral,
        "rhs": chk.rhs,
        "necessary_condition_met": chk.necessary_condition_met,
    }
    out.write(envelope("lyapunov", vars_of(args), results, p.n) + "\n")
    return 0


def cmd_eig(args, out) -> int:
    lam_min = -args.lambda_max if args.allow_negative_beyond_bound else None
    scan = scan_roots(args.alpha, args.lambda_max, args.n_scan, args.tol, lambda_min=lam_min)
    results = {
        "alpha": args.alpha,
        "bound": zero_free_bound(args.alpha),
        "roots": scan.roots,
        "brackets": [list(b) for b in scan.brackets],
        "suspected_tangencies": scan.suspected_tangencies,
        "F0": characteristic(args.alpha, 0.0),
        "lambda_min": scan.lambda_min,
    }
    out.write(envelope("eig", vars_of(args), results, args.n_scan) + "\n")
    return 0


def cmd_verify(args, out) -> int:
    checks = run_all(args.alpha, args.n_specs, args.mesh, args.seed)
    for c in checks:
        out.write(c.line() + "\n")
    ok = all(c.passed for c in checks)
    out.write(("verify: all checks passed" if ok else "verify: FAILED") + "\n")
    return 0 if ok else 4


def vars_of(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rlrobin", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def spec_args(p):
        p.add_argument("--alpha", type=float, required=True)
        p.add_argument("--a", type=float, default=0.0)
        p.add_argument("--b", type=float, default=1.0)

    p = sub.add_parser("ml", help="evaluate E_{alpha,beta}(z)")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--z", type=float, nargs="+", required=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    p.set_defaults(func=cmd_ml)

    p = sub.add_parser("green", help="Green's function on an n x n mesh over (a, b]^2, as CSV")
    spec_args(p)
    p.add_argument("--n", type=int, default=32)
    p.set_defaults(func=cmd_green)

    p = sub.add_parser("solve", help="solve D^alpha y + h = 0 with the Robin conditions")
    spec_args(p)
    p.add_argument("--h", required=True, help="csv:PATH | const:C | power:BETA")
    p.add_argument("--n", type=int, default=2048)
    p.add_argument("--n-out", type=int, default=None)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--out", required=True, help="CSV output path; the JSON sidecar goes to OUT.json")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("lyapunov", help="check the weighted Lyapunov-type inequality")
    spec_args(p)
    p.add_argument("--p", required=True, help="csv:PATH | const:C | power:BETA")
    p.add_argument("--n", type=int, default=2048)
    p.set_defaults(func=cmd_lyapunov)

    p = sub.add_parser("eig", help="scan the characteristic function for real eigenvalues")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--lambda-max", type=float, default=30.0)
    p.add_argument("--n-scan", type=int, default=1000)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--allow-negative-beyond-bound", action="store_true")
    p.set_defaults(func=cmd_eig)

    p = sub.add_parser("verify", help="run the property suite for one alpha")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n-specs", type=int, default=200)
    p.add_argument("--mesh", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run_capture(argv) -> tuple[int, str]:
    buf = io.StringIO()
    code = run(argv, buf)
    return code, buf.getvalue()


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
