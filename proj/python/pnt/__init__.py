"""Proximal Newton-type solver toolkit for composite convex optimization."""

from ._pnt import (
    BoundScan,
    CompositeProblem,
    Dataset,
    DiagnosticsError,
    LibsvmParseError,
    RateFit,
    SolutionSet,
    SolveReport,
    SolverConfig,
    TraceRecord,
    distance_to_solution_set,
    fit_convergence_order,
    generate_synthetic_logistic,
    l1_prox,
    least_squares_problem,
    linear_plus_norm_problem,
    load_libsvm,
    logistic_l1_problem,
    luo_tseng_ratio_sequence,
    normalize_rows,
    parse_libsvm,
    pgm_solve,
    scan_proposition_bounds,
    soft_threshold,
    solve,
)

__all__ = [
    "BoundScan",
    "CompositeProblem",
    "Dataset",
    "DiagnosticsError",
    "LibsvmParseError",
    "RateFit",
    "SolutionSet",
    "SolveReport",
    "SolverConfig",
    "TraceRecord",
    "distance_to_solution_set",
    "fit_convergence_order",
    "generate_synthetic_logistic",
    "l1_prox",
    "least_squares_problem",
    "linear_plus_norm_problem",
    "load_libsvm",
    "logistic_l1_problem",
    "luo_tseng_ratio_sequence",
    "normalize_rows",
    "parse_libsvm",
    "pgm_solve",
    "scan_proposition_bounds",
    "soft_threshold",
    "solve",
]
