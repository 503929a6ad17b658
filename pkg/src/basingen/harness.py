"""Reference benchmarking loop: run a solver against a full class and
score it against the known ground truth.

Two success criteria are tracked separately and combined with "or":

* radius: the best feasible query lies within the global attraction
  radius of some listed global minimizer;
* value: the best feasible value is within ``value_tol`` of the global
  minimum value.

The harness owns the evaluation counter: every value or gradient query
charges one unit against the budget, infeasible queries are filtered
before they reach the objective (and still charged), and exhausting the
budget stops the solver.
"""

from __future__ import annotations

import csv
import json
import statistics
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .evaluate import FAMILIES, d2_gradient, d_gradient, evaluate
from .generator import FUNCTIONS_PER_CLASS, GeneratedFunction, generate
from .params import ClassParams, ParameterError, check

VALUE_TOL_SCALE = 1e-4  # of the paraboloid-minimum-to-global-value drop


class BudgetExhausted(Exception):
    """Control-flow signal: the per-function evaluation budget is spent."""


class BudgetedObjective:
    """Budgeted, domain-filtered view of one generated function.

    Solvers see only this object (plus, for oracle-style replay, the
    ground truth record passed alongside).  Tracks the best feasible
    query and the first evaluation at which the best-so-far satisfied
    either success criterion.
    """

    def __init__(
        self,
        func: GeneratedFunction,
        family: str,
        budget: int,
        value_tol: float,
    ):
        self._func = func
        self.family = family
        self.budget = budget
        self.lower = func.lower
        self.upper = func.upper
        self.dim = func.dim
        self.supports_gradient = family != "nd"
        self.evaluations = 0
        self.best_value: float | None = None
        self.best_point: np.ndarray | None = None
        self.evals_to_success: int | None = None
        self._value_threshold = func.params.global_value + value_tol
        self._radius = func.params.global_radius
        self._global_points = func.minima.local_min[func.glob.global_indices - 1]

    def _charge(self) -> None:
        if self.evaluations >= self.budget:
            raise BudgetExhausted
        self.evaluations += 1

    def _feasible(self, point: np.ndarray) -> bool:
        return bool(np.all(point >= self.lower) and np.all(point <= self.upper))

    def _note_best(self, point: np.ndarray, value: float) -> None:
        if self.best_value is None or value < self.best_value:
            self.best_value = value
            self.best_point = point.copy()
            if self.evals_to_success is None and (
                value <= self._value_threshold or self._hits_global_ball(point)
            ):
                self.evals_to_success = self.evaluations

    def _hits_global_ball(self, point: np.ndarray) -> bool:
        diffs = self._global_points - point
        dist = np.sqrt(np.einsum("ij,ij->i", diffs, diffs))
        return bool(np.any(dist <= self._radius))

    def value(self, x) -> float:
        """Objective value; +inf for infeasible queries (still charged)."""
        self._charge()
        point = np.asarray(x, dtype=float)
        if point.shape != (self.dim,) or not self._feasible(point):
            return float("inf")
        val = evaluate(self._func, point, self.family)
        self._note_best(point, val)
        return val

    def gradient(self, x) -> np.ndarray | None:
        """Exact gradient; None for infeasible queries (still charged)."""
        if not self.supports_gradient:
            raise ValueError("gradient queries are unavailable for the nd family")
        self._charge()
        point = np.asarray(x, dtype=float)
        if point.shape != (self.dim,) or not self._feasible(point):
            return None
        if self.family == "d":
            return d_gradient(self._func, point)
        return d2_gradient(self._func, point)

    def success_flags(self) -> tuple[bool, bool]:
        """(by_radius, by_value) for the final best feasible query."""
        if self.best_point is None:
            return False, False
        by_radius = self._hits_global_ball(self.best_point)
        by_value = self.best_value <= self._value_threshold
        return by_radius, by_value


@dataclass
class FunctionOutcome:
    nf: int
    evaluations: int
    best_value: float | None
    best_point: list[float] | None
    success: bool
    success_by_radius: bool
    success_by_value: bool
    evals_to_success: int | None
    solver_error: str | None = None


@dataclass
class SolverReport:
    """Per-function outcomes for one class sweep plus the aggregates."""

    function_type: str
    budget: int
    value_tol: float
    outcomes: list[FunctionOutcome]
    success_count: int
    radius_success_count: int
    value_success_count: int
    mean_evals_to_success: float | None
    median_evals_to_success: float | None


def run_solver(
    params: ClassParams,
    family: str,
    solver,
    budget: int,
    value_tol: float | None = None,
) -> SolverReport:
    """Benchmark `solver` on all 100 functions of a class.

    `solver` is called as ``solver(objective, func)`` with a
    :class:`BudgetedObjective` and the ground-truth record (for replay
    baselines only; honest solvers must not read it).  A solver exception
    is recorded as a per-function failure; the sweep continues.
    """
    errors = check(params)
    if errors:
        raise ParameterError(errors)
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}, expected one of {FAMILIES}")
    if not isinstance(budget, int) or isinstance(budget, bool) or budget < 1:
        raise ValueError(f"budget must be a positive integer, got {budget!r}")
    if value_tol is None:
        value_tol = VALUE_TOL_SCALE * (params.paraboloid_min - params.global_value)

    outcomes = []
    for nf in range(1, FUNCTIONS_PER_CLASS + 1):
        func = generate(params, nf)
        objective = BudgetedObjective(func, family, budget, value_tol)
        error = None
        try:
            solver(objective, func)
        except BudgetExhausted:
            pass
        except Exception as exc:  # noqa: BLE001 - solver faults are data
            error = f"{type(exc).__name__}: {exc}"
        by_radius, by_value = objective.success_flags()
        outcomes.append(
            FunctionOutcome(
                nf=nf,
                evaluations=objective.evaluations,
                best_value=objective.best_value,
                best_point=(
                    None
                    if objective.best_point is None
                    else [float(v) for v in objective.best_point]
                ),
                success=by_radius or by_value,
                success_by_radius=by_radius,
                success_by_value=by_value,
                evals_to_success=objective.evals_to_success,
                solver_error=error,
            )
        )

    hits = [
        o.evals_to_success
        for o in outcomes
        if o.success and o.evals_to_success is not None
    ]
    return SolverReport(
        function_type=family,
        budget=budget,
        value_tol=value_tol,
        outcomes=outcomes,
        success_count=sum(o.success for o in outcomes),
        radius_success_count=sum(o.success_by_radius for o in outcomes),
        value_success_count=sum(o.success_by_value for o in outcomes),
        mean_evals_to_success=statistics.fmean(hits) if hits else None,
        median_evals_to_success=float(statistics.median(hits)) if hits else None,
    )


# ---------------------------------------------------------------------------
# built-in solvers


def oracle_solver(objective: BudgetedObjective, func: GeneratedFunction) -> None:
    """Replay the stored global minimizer: one evaluation, always succeeds."""
    objective.value(func.global_minimizer)


def make_random_search(seed: int = 0):
    """Pure random search; deterministic per (seed, function number)."""

    def solver(objective: BudgetedObjective, func: GeneratedFunction) -> None:
        rng = np.random.default_rng([seed, func.nf])
        span = objective.upper - objective.lower
        while True:  # stopped by the budget
            objective.value(objective.lower + span * rng.random(objective.dim))

    return solver


def _descend(objective: BudgetedObjective, x: np.ndarray, steps: int) -> None:
    """Gradient descent with backtracking (step halving on no decrease),
    clipped to the box.  The first trial displacement of every iteration
    is capped at a quarter of the smallest domain side so the local phase
    stays local; exploration is the restarts' job."""
    reach = 0.25 * float((objective.upper - objective.lower).min())
    fx = objective.value(x)
    if not np.isfinite(fx):
        return
    for _ in range(steps):
        grad = objective.gradient(x)
        if grad is None:
            return
        gnorm = float(np.linalg.norm(grad))
        if gnorm < 1e-12:
            return
        step = min(1.0, reach / gnorm)
        improved = False
        while step * gnorm > 1e-13:
            candidate = np.clip(x - step * grad, objective.lower, objective.upper)
            fc = objective.value(candidate)
            if fc < fx:
                x, fx = candidate, fc
                improved = True
                break
            step *= 0.5
        if not improved:
            return


def _coordinate_search(objective: BudgetedObjective, x: np.ndarray, steps: int) -> None:
    """Axis-wise pattern search for the non-differentiable family."""
    fx = objective.value(x)
    if not np.isfinite(fx):
        return
    step = 0.25 * (objective.upper - objective.lower)
    for _ in range(steps):
        improved = False
        for axis in range(objective.dim):
            for direction in (1.0, -1.0):
                candidate = x.copy()
                candidate[axis] = np.clip(
                    candidate[axis] + direction * step[axis],
                    objective.lower[axis],
                    objective.upper[axis],
                )
                fc = objective.value(candidate)
                if fc < fx:
                    x, fx = candidate, fc
                    improved = True
        if not improved:
            step *= 0.5
            if float(step.max()) < 1e-9:
                return


def make_multistart(starts: int = 10, local_steps: int = 100, seed: int = 0):
    """Uniform random restarts with a gradient-descent local phase
    (coordinate search on the nd family); deterministic per
    (seed, function number)."""

    def solver(objective: BudgetedObjective, func: GeneratedFunction) -> None:
        rng = np.random.default_rng([seed, func.nf])
        span = objective.upper - objective.lower
        for _ in range(starts):
            start = objective.lower + span * rng.random(objective.dim)
            if objective.supports_gradient:
                _descend(objective, start, local_steps)
            else:
                _coordinate_search(objective, start, local_steps)

    return solver


# ---------------------------------------------------------------------------
# report serialization


def report_to_dict(report: SolverReport) -> dict:
    return {
        "function_type": report.function_type,
        "budget": report.budget,
        "value_tol": report.value_tol,
        "success_count": report.success_count,
        "radius_success_count": report.radius_success_count,
        "value_success_count": report.value_success_count,
        "mean_evals_to_success": report.mean_evals_to_success,
        "median_evals_to_success": report.median_evals_to_success,
        "outcomes": [
            {
                "nf": o.nf,
                "evaluations": o.evaluations,
                "best_value": o.best_value,
                "best_point": o.best_point,
                "success": o.success,
                "success_by_radius": o.success_by_radius,
                "success_by_value": o.success_by_value,
                "evals_to_success": o.evals_to_success,
                "solver_error": o.solver_error,
            }
            for o in report.outcomes
        ],
    }


def write_report(report: SolverReport, json_path, csv_path=None) -> None:
    """Write the full report as JSON and a per-function CSV summary."""
    json_path = Path(json_path)
    with open(json_path, "w") as fh:
        json.dump(report_to_dict(report), fh, indent=2)
        fh.write("\n")
    if csv_path is None:
        csv_path = json_path.with_suffix(".csv")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            [
                "nf",
                "evaluations",
                "best_value",
                "success",
                "success_by_radius",
                "success_by_value",
                "evals_to_success",
                "solver_error",
            ]
        )
        for o in report.outcomes:
            writer.writerow(
                [
                    o.nf,
                    o.evaluations,
                    "" if o.best_value is None else repr(o.best_value),
                    int(o.success),
                    int(o.success_by_radius),
                    int(o.success_by_value),
                    "" if o.evals_to_success is None else o.evals_to_success,
                    o.solver_error or "",
                ]
            )
