"""
Command-line front end.

    qcfeas run --problem P.json [--eps 1e-8] [--max-sweeps 10000]
               [--trace-out T.csv] [--x0=X1,X2,...]
    qcfeas validate --problem P.json [--region=LO,HI] [--samples 10000]
                    [--seed 0] [--tol 1e-9]

``run`` exits with 0 (converged), 2 (sweep budget exhausted) or 1 (any
error). ``validate`` exits with 0 when every report passed, 1 when a
report failed or the input was invalid, and 3 when nothing failed but some
property could not be tested (no feasible samples).

Values that begin with a minus sign must be attached with ``=``, e.g.
``--region=-5,5``.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .core import as_point
from .errors import QcError
from .io import json_safe, parse_problem, write_trace
from .solver import SolverConfig, Status, solve
from .verify import STANDARD_CHECKS, SampleRegion

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MAX_SWEEPS = 2
EXIT_VACUOUS = 3

STATUS_EXIT = {
    Status.CONVERGED: EXIT_OK,
    Status.MAX_SWEEPS_REACHED: EXIT_MAX_SWEEPS,
    Status.ORACLE_ERROR: EXIT_ERROR,
}


def _floats(text: str) -> list:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def parse_region(values: list, dimension: int, samples: int, seed: int) -> SampleRegion:
    """``[lo, hi]`` for a cube or ``[lo1, hi1, ..., lon, hin]`` per axis."""
    if len(values) == 2:
        return SampleRegion.box(values[0], values[1], dimension, samples, seed)
    if len(values) == 2 * dimension:
        v = np.array(values).reshape(dimension, 2)
        return SampleRegion(v[:, 0], v[:, 1], samples, seed)
    raise ValueError(f"--region needs 2 or {2 * dimension} numbers, got {len(values)}")


def cmd_run(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        problem, x0, reference = parse_problem(args.problem)
        if args.x0 is not None:
            x0 = as_point(args.x0, problem.dimension)
        if x0 is None:
            raise ValueError("no starting point: add 'x0' to the problem file or pass --x0")
        cfg = SolverConfig(eps=args.eps, max_sweeps=args.max_sweeps,
                           record_inner=True, fejer_reference=reference)
    except (OSError, QcError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_ERROR

    result = solve(problem, x0, cfg)
    summary = {
        "status": result.status.value,
        "final_point": result.x.tolist(),
        "residual": result.residual,
        "sweeps": result.sweeps,
    }
    if result.error is not None:
        summary["error"] = str(result.error)
        summary["function_index"] = result.error.index
        print(f"error: {result.error}", file=err)
    print(json.dumps(json_safe(summary)), file=out)

    if args.trace_out:
        try:
            write_trace(args.trace_out, result.trace, problem.dimension, reference)
        except OSError as exc:
            print(f"error: cannot write trace: {exc}", file=err)
            return EXIT_ERROR
    return STATUS_EXIT[result.status]


def cmd_validate(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        problem, _, _ = parse_problem(args.problem)
        region = parse_region(args.region, problem.dimension, args.samples, args.seed)
    except (OSError, QcError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_ERROR

    failed = vacuous = False
    for f in problem.functions:
        for check in STANDARD_CHECKS:
            rep = check(f, region, args.tol)
            failed |= not rep.passed
            vacuous |= rep.vacuous
            print(json.dumps(json_safe(rep.to_dict())), file=out)
    if failed:
        return EXIT_ERROR
    return EXIT_VACUOUS if vacuous else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcfeas",
        description="Cyclic star subgradient projections for quasi-convex feasibility.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="solve a problem file")
    run.add_argument("--problem", required=True, metavar="PATH")
    run.add_argument("--eps", type=float, default=1e-8)
    run.add_argument("--max-sweeps", type=int, default=10_000)
    run.add_argument("--trace-out", metavar="PATH")
    run.add_argument("--x0", type=_floats, metavar="X1,X2,...")
    run.set_defaults(func=cmd_run)

    val = sub.add_parser("validate", help="sample-check every function in a problem file")
    val.add_argument("--problem", required=True, metavar="PATH")
    val.add_argument("--region", type=_floats, default=[-10.0, 10.0], metavar="LO,HI")
    val.add_argument("--samples", type=int, default=10_000)
    val.add_argument("--seed", type=int, default=0)
    val.add_argument("--tol", type=float, default=1e-9)
    val.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
