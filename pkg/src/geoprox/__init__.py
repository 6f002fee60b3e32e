"""Geodesically convex optimization with proximal splitting.

Intrinsic proximal gradient solvers on Hadamard manifolds (hyperbolic
space and symmetric positive definite matrices), a proximal-operator
library, curvature-aware descent/rate certificates, and a benchmark CLI.
"""

__version__ = "0.1.0"

from .backends import ACTIVE_BACKEND, backend_name
from .manifolds import (CurvatureBounds, EuclideanGeometry, Geometry,
                        HyperbolicGeometry, ManifoldPoint, SpdGeometry,
                        TangentVector, curvature_coefficients, geodesic,
                        hyp_sample_gaussian, hyp_sample_intrinsic,
                        minkowski_inner)
from .proxops import (L1ProxResult, l1_shrink_limit, l1_shrink_vector,
                      l1_stationarity_residual, l1_tangent_residual,
                      project_ball, prox_distance, prox_l1_hyperbolic,
                      prox_sq_distance)
from .objectives import (DataCloud, SplitProblem, constrained_mean_problem,
                         frechet_gradient, frechet_lipschitz, frechet_value,
                         logdet4_gradient, logdet4_hessian_bound,
                         logdet4_lipschitz, logdet4_value,
                         sparse_mean_problem, spd_quartic_problem)
from .solvers import (BacktrackingStep, ConstantStep, SolverTrace,
                      StoppingCriterion, backtrack, cppa_solve,
                      crpg_iterate, crpg_solve, gradient_mapping_norm,
                      gradient_step, pga_solve)
from .checks import (BASE_WEIGHTED, DISTANCE_ONLY, PROX_GRAD_VARIANTS,
                     STEP_WEIGHTED, InequalityReport, RateEnvelope,
                     RateReport, build_envelope, check_convex_rate,
                     check_prox_grad_inequality,
                     check_strongly_convex_rate, check_sufficient_decrease,
                     triangle_diameter)
from .experiments import (EXPERIMENTS, ConfigError, ExperimentConfig,
                          ExperimentResult, run_constrained_mean,
                          run_inequality_suite, run_sparse_mean,
                          run_spd_convex)

__all__ = [
    "__version__", "ACTIVE_BACKEND", "backend_name",
    "CurvatureBounds", "EuclideanGeometry", "Geometry",
    "HyperbolicGeometry", "ManifoldPoint", "SpdGeometry", "TangentVector",
    "curvature_coefficients", "geodesic", "hyp_sample_gaussian",
    "hyp_sample_intrinsic", "minkowski_inner",
    "L1ProxResult", "l1_shrink_limit", "l1_shrink_vector",
    "l1_stationarity_residual", "l1_tangent_residual", "project_ball",
    "prox_distance", "prox_l1_hyperbolic", "prox_sq_distance",
    "DataCloud", "SplitProblem", "constrained_mean_problem",
    "frechet_gradient", "frechet_lipschitz", "frechet_value",
    "logdet4_gradient", "logdet4_hessian_bound", "logdet4_lipschitz",
    "logdet4_value", "sparse_mean_problem", "spd_quartic_problem",
    "BacktrackingStep", "ConstantStep", "SolverTrace", "StoppingCriterion",
    "backtrack", "cppa_solve", "crpg_iterate", "crpg_solve",
    "gradient_mapping_norm", "gradient_step", "pga_solve",
    "BASE_WEIGHTED", "DISTANCE_ONLY", "PROX_GRAD_VARIANTS", "STEP_WEIGHTED",
    "InequalityReport", "RateEnvelope", "RateReport", "build_envelope",
    "check_convex_rate", "check_prox_grad_inequality",
    "check_strongly_convex_rate", "check_sufficient_decrease",
    "triangle_diameter",
    "EXPERIMENTS", "ConfigError", "ExperimentConfig", "ExperimentResult",
    "run_constrained_mean", "run_inequality_suite", "run_sparse_mean",
    "run_spd_convex",
]
