"""Riemann-Liouville Robin boundary-value toolkit.

Mittag-Leffler evaluation, product-trapezoidal fractional operators, the
closed-form Robin Green's function with its bounds, the weighted
Lyapunov-type inequality and the eigenvalue / zero-free interval scan.
"""

__version__ = "0.1.0"

from .errors import DomainError, NonConvergenceError, ToolkitError, VerificationError
from .special import MLParams, log_gamma, mittag_leffler, rgamma
from .fraccalc import (
    GridFunction,
    WeightedFunction,
    power_rule_derivative,
    power_rule_integral,
    rl_derivative,
    rl_integral,
    rl_integral_all,
)
from .green import (
    BoundReport,
    ProblemSpec,
    constant_A,
    green_eval,
    grid_search_max,
    paper_diag_bound,
    paper_int_bound,
    weighted_green_eval,
)
from .bvp import BVPSolution, bc_residuals, residual_interior, solve
from .lyapunov import (
    LyapunovCheck,
    RootScan,
    characteristic,
    eigenfunction,
    lyapunov_check,
    lyapunov_rhs,
    scan_roots,
    zero_free_bound,
)
