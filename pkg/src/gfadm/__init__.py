"""Green's-function decomposition solver for coupled singular BVPs."""

from .adomian import adomian_coefficients, adomian_polynomial_rows
from .analysis import (
    ADOMIAN_IDENTITY,
    SPECTRAL,
    ConvergenceEstimate,
    ResidualReport,
    convergence_estimate,
    error_bound,
    lipschitz_estimate,
    max_residual,
    residual,
    solution_box,
)
from .benchmarks import (
    catalytic_problem,
    catalytic_symmetric_problem,
    co2_pge_problem,
    oxygen_problem,
)
from .errors import (
    BoundInapplicableError,
    DegreeCapError,
    EvaluationError,
    ExpressionError,
    GfadmError,
    NoConvergenceError,
    NumericError,
    OrderMismatchError,
    ProblemFileError,
    QuadratureError,
    SingularDivisionError,
    UnsupportedBackendError,
    UsageError,
)
from .expr import eval_scalar, eval_series, parse_expression, to_text
from .grids import GridFunction, Polynomial, chebyshev_lobatto
from .kernels import (
    DIRICHLET_DIRICHLET,
    LANE_EMDEN,
    KernelSpec,
    kernel_apply,
    kernel_bound_m,
    kernel_eval,
    kernel_monomial_image,
)
from .oracle import OracleSolution, fd_solve
from .series import TruncatedSeries
from .solver import (
    DIRICHLET,
    EXACT,
    GRID,
    NEUMANN_ZERO,
    ComponentSpec,
    ProblemSpec,
    SolutionSeries,
    build_baseline,
    evaluate_partial_sum,
    gfadm_solve,
)

__version__ = "0.1.0"

__all__ = [
    "ADOMIAN_IDENTITY",
    "SPECTRAL",
    "DIRICHLET",
    "DIRICHLET_DIRICHLET",
    "EXACT",
    "GRID",
    "LANE_EMDEN",
    "NEUMANN_ZERO",
    "BoundInapplicableError",
    "ComponentSpec",
    "ConvergenceEstimate",
    "DegreeCapError",
    "EvaluationError",
    "ExpressionError",
    "GfadmError",
    "GridFunction",
    "KernelSpec",
    "NoConvergenceError",
    "NumericError",
    "OracleSolution",
    "OrderMismatchError",
    "Polynomial",
    "ProblemFileError",
    "ProblemSpec",
    "QuadratureError",
    "ResidualReport",
    "SingularDivisionError",
    "SolutionSeries",
    "TruncatedSeries",
    "UnsupportedBackendError",
    "UsageError",
    "adomian_coefficients",
    "adomian_polynomial_rows",
    "build_baseline",
    "catalytic_problem",
    "catalytic_symmetric_problem",
    "chebyshev_lobatto",
    "co2_pge_problem",
    "convergence_estimate",
    "error_bound",
    "eval_scalar",
    "eval_series",
    "evaluate_partial_sum",
    "fd_solve",
    "gfadm_solve",
    "kernel_apply",
    "kernel_bound_m",
    "kernel_eval",
    "kernel_monomial_image",
    "lipschitz_estimate",
    "max_residual",
    "oxygen_problem",
    "parse_expression",
    "residual",
    "solution_box",
    "to_text",
]
