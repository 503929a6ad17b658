"""Deterministic generator of multiextremal box-constrained test
landscapes with fully known ground truth (every local minimizer, its
value, and its attraction radius), in three smoothness families, with
exact gradients and Hessians where defined."""

from .params import (
    ClassParams,
    ErrorCode,
    ParameterError,
    ValidationError,
    check,
    default_params,
    params_from_dict,
    params_to_dict,
)
from .rng import LaggedFibonacci
from .generator import (
    FUNCTIONS_PER_CLASS,
    GeneratedFunction,
    GlobalInfo,
    MinimaTable,
    function_seed,
    generate,
    ground_truth_problems,
)
from .evaluate import (
    FAMILIES,
    BadVariableIndexError,
    DerivEvalError,
    EvaluationError,
    NoFunctionError,
    OutOfDomainError,
    d2_deriv1,
    d2_deriv2,
    d2_gradient,
    d2_hessian,
    d_deriv,
    d_gradient,
    eval_d,
    eval_d2,
    eval_many,
    eval_nd,
    evaluate,
    locate_ball,
)
from .notebook import (
    LoadedClass,
    NotebookError,
    export_class,
    grid_samples,
    load_class,
    write_grid,
)
from .harness import (
    BudgetedObjective,
    FunctionOutcome,
    SolverReport,
    make_multistart,
    make_random_search,
    oracle_solver,
    run_solver,
    write_report,
)

__version__ = "0.1.0"

__all__ = [
    "BadVariableIndexError",
    "BudgetedObjective",
    "ClassParams",
    "DerivEvalError",
    "ErrorCode",
    "EvaluationError",
    "FAMILIES",
    "FUNCTIONS_PER_CLASS",
    "FunctionOutcome",
    "GeneratedFunction",
    "GlobalInfo",
    "LaggedFibonacci",
    "LoadedClass",
    "MinimaTable",
    "NoFunctionError",
    "NotebookError",
    "OutOfDomainError",
    "ParameterError",
    "SolverReport",
    "ValidationError",
    "check",
    "d2_deriv1",
    "d2_deriv2",
    "d2_gradient",
    "d2_hessian",
    "d_deriv",
    "d_gradient",
    "default_params",
    "eval_d",
    "eval_d2",
    "eval_many",
    "eval_nd",
    "evaluate",
    "export_class",
    "function_seed",
    "generate",
    "grid_samples",
    "ground_truth_problems",
    "load_class",
    "locate_ball",
    "make_multistart",
    "make_random_search",
    "oracle_solver",
    "params_from_dict",
    "params_to_dict",
    "run_solver",
    "write_grid",
    "write_report",
]
