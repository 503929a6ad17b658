"""Command-line front end.

Subcommands: ``check`` (validate class parameters), ``gen`` (write a
ground-truth notebook), ``eval`` (evaluate a function, gradient, or
Hessian from a notebook), ``grid`` (export a 2-D surface grid as CSV),
and ``bench`` (run a built-in solver over a class).

Exit codes: 0 on success, 1 on domain or validation failures, 2 on usage
errors.  Failed evaluations print the sentinel value 1e100 so text-level
consumers of sentinel-style tooling keep working; the library itself
raises typed errors instead.
"""

from __future__ import annotations

import argparse
import sys

from .evaluate import (
    EvaluationError,
    eval_d,
    eval_d2,
    eval_nd,
    d2_gradient,
    d2_hessian,
    d_gradient,
)
from .generator import FUNCTIONS_PER_CLASS
from .harness import make_multistart, make_random_search, oracle_solver, run_solver, write_report
from .notebook import NotebookError, export_class, load_class, summary_path_for, write_grid
from .params import (
    ClassParams,
    DEFAULT_GLOBAL_VALUE,
    ErrorCode,
    ParameterError,
    check,
)

SENTINEL_VALUE = 1e100

_VALUE_EVALUATORS = {"nd": eval_nd, "d": eval_d, "d2": eval_d2}
_GRADIENTS = {"d": d_gradient, "d2": d2_gradient}


def _fmt(value) -> str:
    return format(float(value), ".17g")


def _parse_vector(text: str, flag: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{flag} expects comma-separated numbers, got {text!r}"
        )


def _add_class_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dim", type=int, default=2, help="problem dimension (default 2)")
    parser.add_argument(
        "--minima", type=int, default=10,
        help="number of local minima, vertex included (default 10)",
    )
    parser.add_argument(
        "--global-value", type=float, default=DEFAULT_GLOBAL_VALUE,
        help="global minimum value (default -1)",
    )
    parser.add_argument(
        "--global-dist", type=float, default=None,
        help="distance from the paraboloid vertex to the global minimizer "
        "(default: smallest domain side / 3)",
    )
    parser.add_argument(
        "--global-radius", type=float, default=None,
        help="attraction radius of the global minimizer "
        "(default: smallest domain side / 6)",
    )
    parser.add_argument(
        "--domain-left", type=str, default=None, metavar="A1,A2,...",
        help="left domain bounds (default -1 everywhere)",
    )
    parser.add_argument(
        "--domain-right", type=str, default=None, metavar="B1,B2,...",
        help="right domain bounds (default 1 everywhere)",
    )
    parser.add_argument(
        "--paraboloid-min", type=float, default=0.0,
        help="paraboloid minimum value (default 0)",
    )
    parser.add_argument(
        "--delta-max", type=float, default=10.0,
        help="upper bound of the curvature draw for the d2 family (default 10)",
    )
    parser.add_argument(
        "--gap", type=float, default=None,
        help="clearance between local minimizers and the global ball "
        "(default: the attraction radius)",
    )


def _params_from_args(args) -> ClassParams:
    dim = args.dim
    width = max(dim, 1)
    left = (
        _parse_vector(args.domain_left, "--domain-left")
        if args.domain_left is not None
        else (-1.0,) * width
    )
    right = (
        _parse_vector(args.domain_right, "--domain-right")
        if args.domain_right is not None
        else (1.0,) * width
    )
    side = 0.0
    if len(left) == len(right) and all(lo < hi for lo, hi in zip(left, right)):
        side = min(hi - lo for lo, hi in zip(left, right))
    dist = args.global_dist if args.global_dist is not None else side / 3.0
    radius = args.global_radius if args.global_radius is not None else side / 6.0
    return ClassParams(
        dim=dim,
        num_minima=args.minima,
        global_value=args.global_value,
        global_dist=dist,
        global_radius=radius,
        domain_left=left,
        domain_right=right,
        paraboloid_min=args.paraboloid_min,
        delta_max=args.delta_max,
        gap=args.gap if args.gap is not None else (radius if radius > 0 else 0.0),
    )


def _print_violations(errors) -> None:
    for err in errors:
        print(f"{err.code.value}: {err.detail}", file=sys.stderr)


def _usage(message: str) -> int:
    print(f"usage error: {message}", file=sys.stderr)
    return 2


def cmd_check(args) -> int:
    params = _params_from_args(args)
    errors = check(params)
    if errors:
        _print_violations(errors)
        return 1
    print("ok")
    return 0


def cmd_gen(args) -> int:
    params = _params_from_args(args)
    errors = check(params)
    if errors:
        _print_violations(errors)
        return 1
    document = export_class(params, args.type, args.out)
    print(f"wrote {args.out} ({len(document['functions'])} functions) "
          f"and {summary_path_for(args.out)}")
    for entry in document["functions"]:
        glob = entry["global"]
        head = glob["gm_index"][: glob["num_global_minima"]]
        coords = "; ".join(
            "(" + ", ".join(_fmt(v) for v in entry["minimizers"][idx - 1]["coords"]) + ")"
            for idx in head
        )
        print(f"nf {entry['nf']:3d}: global minimizer(s) {coords}")
    return 0


def cmd_eval(args) -> int:
    loaded = load_class(args.notebook)
    if not 1 <= args.nf <= FUNCTIONS_PER_CLASS:
        print(
            f"{ErrorCode.FUNC_NUMBER.value}: function number must be in "
            f"[1, {FUNCTIONS_PER_CLASS}], got {args.nf}",
            file=sys.stderr,
        )
        return 1
    func = loaded.functions[args.nf - 1]
    family = args.type or loaded.function_type
    point = _parse_vector(args.point, "--point")
    if len(point) != func.dim:
        return _usage(f"--point must have {func.dim} coordinates, got {len(point)}")
    if args.grad and family == "nd":
        return _usage("gradients are unavailable for the nd family")
    if args.hess and family != "d2":
        return _usage("Hessians are only available for the d2 family")
    try:
        if args.grad:
            vec = _GRADIENTS[family](func, point)
            print(", ".join(_fmt(v) for v in vec))
        elif args.hess:
            matrix = d2_hessian(func, point)
            for row in matrix:
                print(", ".join(_fmt(v) for v in row))
        else:
            print(_fmt(_VALUE_EVALUATORS[family](func, point)))
        return 0
    except EvaluationError as exc:
        print(_fmt(SENTINEL_VALUE))
        print(f"error: {exc}", file=sys.stderr)
        return 1


def cmd_grid(args) -> int:
    loaded = load_class(args.notebook)
    if not 1 <= args.nf <= FUNCTIONS_PER_CLASS:
        print(
            f"{ErrorCode.FUNC_NUMBER.value}: function number must be in "
            f"[1, {FUNCTIONS_PER_CLASS}], got {args.nf}",
            file=sys.stderr,
        )
        return 1
    func = loaded.functions[args.nf - 1]
    family = args.type or loaded.function_type
    rows = write_grid(args.out, func, family, args.res)
    print(f"wrote {args.out} ({rows} rows)")
    return 0


def cmd_bench(args) -> int:
    params = _params_from_args(args)
    errors = check(params)
    if errors:
        _print_violations(errors)
        return 1
    if args.solver == "random":
        solver = make_random_search(seed=args.seed)
    elif args.solver == "multistart":
        solver = make_multistart(seed=args.seed)
    else:
        solver = oracle_solver
    report = run_solver(params, args.type, solver, budget=args.budget)
    write_report(report, args.out)
    print(
        f"{args.solver} on the {args.type} class: "
        f"{report.success_count}/{FUNCTIONS_PER_CLASS} successes "
        f"({report.radius_success_count} by radius, "
        f"{report.value_success_count} by value); report in {args.out}"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="basingen",
        description="Generate, inspect, and benchmark classes of "
        "multiextremal test functions with known ground truth.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="validate class parameters")
    _add_class_flags(p_check)
    p_check.set_defaults(handler=cmd_check)

    p_gen = sub.add_parser("gen", help="generate a class and write its notebook")
    _add_class_flags(p_gen)
    p_gen.add_argument("--type", choices=("nd", "d", "d2"), required=True)
    p_gen.add_argument("--out", required=True, help="notebook path (JSON)")
    p_gen.set_defaults(handler=cmd_gen)

    p_eval = sub.add_parser("eval", help="evaluate a notebook function at a point")
    p_eval.add_argument("--notebook", required=True)
    p_eval.add_argument("--nf", type=int, required=True)
    p_eval.add_argument("--type", choices=("nd", "d", "d2"), default=None,
                        help="family (default: the notebook's)")
    p_eval.add_argument(
        "--point", required=True, metavar="X1,X2,...",
        help="evaluation point; use --point=-0.5,0.2 when the first "
        "coordinate is negative",
    )
    group = p_eval.add_mutually_exclusive_group()
    group.add_argument("--grad", action="store_true", help="print the gradient")
    group.add_argument("--hess", action="store_true", help="print the Hessian")
    p_eval.set_defaults(handler=cmd_eval)

    p_grid = sub.add_parser("grid", help="export a 2-D surface grid as CSV")
    p_grid.add_argument("--notebook", required=True)
    p_grid.add_argument("--nf", type=int, required=True)
    p_grid.add_argument("--type", choices=("nd", "d", "d2"), default=None)
    p_grid.add_argument("--res", type=int, default=101, help="points per axis")
    p_grid.add_argument("--out", required=True, help="CSV path")
    p_grid.set_defaults(handler=cmd_grid)

    p_bench = sub.add_parser("bench", help="benchmark a built-in solver on a class")
    _add_class_flags(p_bench)
    p_bench.add_argument("--type", choices=("nd", "d", "d2"), required=True)
    p_bench.add_argument(
        "--solver", choices=("multistart", "random", "oracle"), default="multistart"
    )
    p_bench.add_argument("--budget", type=int, default=1000)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--out", required=True, help="report path (JSON)")
    p_bench.set_defaults(handler=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except argparse.ArgumentTypeError as exc:
        return _usage(str(exc))
    except ParameterError as exc:
        _print_violations(exc.errors)
        return 1
    except NotebookError as exc:
        print(f"notebook error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


def main_entry() -> None:
    raise SystemExit(main(sys.argv[1:]))
