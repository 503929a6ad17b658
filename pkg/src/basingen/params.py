"""Class-definition parameters, their validation, and the error-code contract.

A :class:`ClassParams` value pins down one class of 100 test functions:
the user-facing quintet (dimension, number of minima, global minimum
value, distance from the paraboloid vertex to the global minimizer, and
the attraction radius of the global minimizer) plus the admissible box
and a handful of defaulted tuning constants.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

DEFAULT_NUM_MINIMA = 10
DEFAULT_GLOBAL_VALUE = -1.0
DEFAULT_PARABOLOID_MIN = 0.0
DEFAULT_DELTA_MAX = 10.0
DEFAULT_PRECISION = 1e-10
DEFAULT_MAX_DIM = 100

GLOBAL_WEIGHT = 1.0
LOCAL_WEIGHT = 0.99


class ErrorCode(enum.Enum):
    """Stable identifiers for every reportable failure condition."""

    DIM = "DimError"
    NUM_MINIMA = "NumMinimaError"
    BOUNDARY = "BoundaryError"
    GLOBAL_MIN_VALUE = "GlobalMinValueError"
    GLOBAL_DIST = "GlobalDistError"
    GLOBAL_RADIUS = "GlobalRadiusError"
    FUNC_NUMBER = "FuncNumberError"
    DERIV_EVAL = "DerivEvalError"


@dataclass(frozen=True)
class ValidationError:
    """One violated condition: machine-readable code plus human detail."""

    code: ErrorCode
    detail: str

    def __str__(self) -> str:
        return f"{self.code.value}: {self.detail}"


class ParameterError(Exception):
    """Raised when an operation cannot proceed on invalid inputs.

    Carries the full list of violations so callers can report all of
    them, not just the first.
    """

    def __init__(self, errors):
        if isinstance(errors, ValidationError):
            errors = [errors]
        self.errors: list[ValidationError] = list(errors)
        super().__init__("; ".join(str(e) for e in self.errors))

    @property
    def codes(self) -> list[ErrorCode]:
        return [e.code for e in self.errors]


def default_weights(num_minima: int) -> tuple[float, ...]:
    """Radius weights: 1.0 for the global minimizer, 0.99 elsewhere."""
    if num_minima < 1:
        return ()
    weights = [LOCAL_WEIGHT] * num_minima
    if num_minima >= 2:
        weights[1] = GLOBAL_WEIGHT
    return tuple(weights)


@dataclass(frozen=True)
class ClassParams:
    """Immutable definition of one class of 100 test functions.

    ``gap`` and ``weights`` may be passed as ``None`` to request their
    defaults (the attraction radius of the global minimizer, and the
    0.99/1.0 weight vector, respectively).
    """

    dim: int
    num_minima: int
    global_value: float
    global_dist: float
    global_radius: float
    domain_left: tuple[float, ...]
    domain_right: tuple[float, ...]
    paraboloid_min: float = DEFAULT_PARABOLOID_MIN
    delta_max: float = DEFAULT_DELTA_MAX
    gap: float | None = None
    weights: tuple[float, ...] | None = None
    precision: float = DEFAULT_PRECISION
    max_dim: int = DEFAULT_MAX_DIM

    def __post_init__(self):
        object.__setattr__(self, "domain_left", tuple(float(v) for v in self.domain_left))
        object.__setattr__(self, "domain_right", tuple(float(v) for v in self.domain_right))
        if self.gap is None:
            object.__setattr__(self, "gap", float(self.global_radius))
        if self.weights is None:
            object.__setattr__(self, "weights", default_weights(self.num_minima))
        else:
            weights = tuple(float(w) for w in self.weights)
            if len(weights) != self.num_minima:
                raise ValueError(
                    f"weights must have one entry per minimizer "
                    f"({self.num_minima}), got {len(weights)}"
                )
            object.__setattr__(self, "weights", weights)


def default_params(dim: int) -> ClassParams:
    """Build the default class for `dim`: box [-1, 1]^dim, 10 minima,
    global value -1, vertex distance side/3, attraction radius side/6.
    """
    if not isinstance(dim, int) or isinstance(dim, bool) or not 2 <= dim <= DEFAULT_MAX_DIM:
        raise ParameterError(
            ValidationError(
                ErrorCode.DIM,
                f"dimension must satisfy 2 <= dim <= {DEFAULT_MAX_DIM}, got {dim!r}",
            )
        )
    side = 2.0  # smallest |right - left| of the default box
    return ClassParams(
        dim=dim,
        num_minima=DEFAULT_NUM_MINIMA,
        global_value=DEFAULT_GLOBAL_VALUE,
        global_dist=side / 3.0,
        global_radius=side / 6.0,
        domain_left=(-1.0,) * dim,
        domain_right=(1.0,) * dim,
    )


def check(params: ClassParams) -> list[ValidationError]:
    """Return every violated class condition (empty list means valid).

    Pure: inspects `params` only, never raises for invalid values.
    """
    errors: list[ValidationError] = []
    if not 2 <= params.dim <= params.max_dim:
        errors.append(
            ValidationError(
                ErrorCode.DIM,
                f"dimension must satisfy 2 <= dim <= {params.max_dim}, got {params.dim}",
            )
        )
    if params.num_minima < 2:
        errors.append(
            ValidationError(
                ErrorCode.NUM_MINIMA,
                f"number of minima (paraboloid vertex included) must be >= 2, "
                f"got {params.num_minima}",
            )
        )

    left, right = params.domain_left, params.domain_right
    domain_ok = len(left) == params.dim == len(right) and all(
        lo < hi for lo, hi in zip(left, right)
    )
    if not domain_ok:
        errors.append(
            ValidationError(
                ErrorCode.BOUNDARY,
                f"domain bounds must be length-{params.dim} vectors with "
                f"left < right componentwise",
            )
        )

    if not params.global_value < params.paraboloid_min:
        errors.append(
            ValidationError(
                ErrorCode.GLOBAL_MIN_VALUE,
                f"global minimum value ({params.global_value}) must be strictly "
                f"below the paraboloid minimum ({params.paraboloid_min})",
            )
        )
    if domain_ok:
        half_side = 0.5 * min(hi - lo for lo, hi in zip(left, right))
        if not 0.0 < params.global_dist < half_side:
            errors.append(
                ValidationError(
                    ErrorCode.GLOBAL_DIST,
                    f"global-minimizer distance must satisfy 0 < dist < {half_side} "
                    f"(half the smallest domain side), got {params.global_dist}",
                )
            )
    if not 0.0 < params.global_radius <= 0.5 * params.global_dist:
        errors.append(
            ValidationError(
                ErrorCode.GLOBAL_RADIUS,
                f"global attraction radius must satisfy 0 < radius <= "
                f"{0.5 * params.global_dist} (half the global-minimizer distance), "
                f"got {params.global_radius}",
            )
        )
    return errors


def params_to_dict(params: ClassParams) -> dict:
    """JSON-ready mapping with the fixed key set of the class schema."""
    return {
        "dim": params.dim,
        "num_minima": params.num_minima,
        "global_value": params.global_value,
        "global_dist": params.global_dist,
        "global_radius": params.global_radius,
        "domain_left": list(params.domain_left),
        "domain_right": list(params.domain_right),
        "paraboloid_min": params.paraboloid_min,
        "delta_max": params.delta_max,
        "gap": params.gap,
        "weights": list(params.weights),
        "precision": params.precision,
    }


def params_from_dict(data: dict) -> ClassParams:
    """Inverse of :func:`params_to_dict`; raises KeyError on missing keys."""
    return ClassParams(
        dim=int(data["dim"]),
        num_minima=int(data["num_minima"]),
        global_value=float(data["global_value"]),
        global_dist=float(data["global_dist"]),
        global_radius=float(data["global_radius"]),
        domain_left=tuple(data["domain_left"]),
        domain_right=tuple(data["domain_right"]),
        paraboloid_min=float(data["paraboloid_min"]),
        delta_max=float(data["delta_max"]),
        gap=float(data["gap"]),
        weights=tuple(data["weights"]),
        precision=float(data["precision"]),
    )
