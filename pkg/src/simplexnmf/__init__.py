"""Symmetric NMF with row-stochastic factors: solvers and diagnostics."""

from .baselines import (PenaltyConfig, PgdConfig, penalty_solve, pgd_solve,
                        project_rows_simplex, project_simplex)
from .core import (CoClusterMatrix, SolverConfig, SolverTrace, TerminalReason,
                   check_factor_matrix, validate_cocluster, vertex_to_dense)
from .counterexample import (PolytopeProblem, failure_problem, pw_curvature_witness,
                             pw_fw_run, pw_lmo, success_problem)
from .curvature import (CurvatureReport, curvature_bounds, empirical_curvature,
                        extremal_instances, hessian_operator, spectral_norm)
from .estimators import SimplicialSymNMF
from .frank_wolfe import RateCertificate, fw_solve, lmo_and_update
from .io import (Dataset, gaussian_kernel, read_csv_dataset, read_factor,
                 write_factor, write_trace)
from .objective import fw_gap, gradient, hessian_vector_product, objective_value
from .synthetic import initial_factor, planted_instance

__version__ = "0.1.0"

__all__ = [
    "CoClusterMatrix", "CurvatureReport", "Dataset", "PenaltyConfig",
    "PgdConfig", "PolytopeProblem", "RateCertificate", "SimplicialSymNMF",
    "SolverConfig", "SolverTrace", "TerminalReason", "check_factor_matrix",
    "curvature_bounds", "empirical_curvature", "extremal_instances",
    "failure_problem", "fw_gap", "fw_solve", "gaussian_kernel", "gradient",
    "hessian_operator", "hessian_vector_product", "initial_factor",
    "lmo_and_update", "objective_value", "penalty_solve", "pgd_solve",
    "planted_instance", "project_rows_simplex", "project_simplex",
    "pw_curvature_witness", "pw_fw_run", "pw_lmo", "read_csv_dataset",
    "read_factor", "spectral_norm", "success_problem", "validate_cocluster",
    "vertex_to_dense", "write_factor", "write_trace",
]
