"""Solvers for the nonlinear norm equation A x - |x|_1 x = b.

Thin re-export of the compiled module; see the individual docstrings there.
"""

from ._core import (
    LaplacianDecomposition,
    NormeqError,
    PerturbationBound,
    PerturbationReport,
    PerturbationTrial,
    ProblemInstance,
    SolveResult,
    SqrtResult,
    ValidationCheck,
    ValidationReport,
    build_dense_problem,
    build_toeplitz_problem,
    decompose,
    gen_example1,
    gen_example2,
    load_graph_laplacian,
    load_problem,
    mu_star,
    perturbation_bound,
    rank_one_sqrt,
    residual,
    save_problem,
    scalar_f,
    scalar_fprime,
    solve_lap_equation,
    solve_newton,
    solve_rfpi,
    solve_sda,
    suggest_v,
    symbol_sqrt,
    tau_admissible_max,
    tau_opt,
    verify_bound,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
