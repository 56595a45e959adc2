"""``bench`` command line front-end.

Subcommands::

    bench list
    bench describe <id>
    bench eval <id> --x <comma-list> [--seed S --eval-index I]
    bench run --problem <id> --solver <id> --trials N --seed S
              [--config file.json] [--out path --format csv|json]
    bench verify

Exit codes: 0 success, 1 verification/acceptance failure or I/O error,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import benchmarks
from .core import ContractViolation, Curve, FlatRegions, PointSet, evaluate, is_feasible
from .harness import RunConfig, UsageError, emit_report, run_trials, verify_suite
from .noise import NoiseKey, NoisePolicy

USAGE_ERROR = 2
FAILURE = 1

# run-config keys accepted in a --config file; everything else is treated as
# a solver parameter override (flat map, CLI flags win)
_RUN_KEYS = {"problem", "solver", "trials", "seed", "eps_f", "eps_x", "out", "format",
             "noise_policy", "problem_params"}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ContractViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILURE


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bench",
                                     description="benchmark catalog and trial runner")
    sub = parser.add_subparsers(dest="command", required=True)

    p_list = sub.add_parser("list", help="list the benchmark catalog")
    p_list.set_defaults(handler=_cmd_list)

    p_desc = sub.add_parser("describe", help="show one benchmark's definition")
    p_desc.add_argument("id")
    p_desc.set_defaults(handler=_cmd_describe)

    p_eval = sub.add_parser("eval", help="evaluate a benchmark at a point")
    p_eval.add_argument("id")
    p_eval.add_argument("--x", required=True, help="comma-separated coordinates")
    p_eval.add_argument("--seed", type=int, default=0)
    p_eval.add_argument("--eval-index", type=int, default=0)
    p_eval.set_defaults(handler=_cmd_eval)

    p_run = sub.add_parser("run", help="run a seeded trial batch")
    p_run.add_argument("--problem", required=True)
    p_run.add_argument("--solver", required=True)
    p_run.add_argument("--trials", type=int, default=None)
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--config", default=None, help="JSON file with a flat override map")
    p_run.add_argument("--out", default=None)
    p_run.add_argument("--format", choices=("csv", "json"), default=None)
    p_run.set_defaults(handler=_cmd_run)

    p_verify = sub.add_parser("verify", help="run the oracle verification suite")
    p_verify.set_defaults(handler=_cmd_verify)
    return parser


def _get_problem(problem_id: str):
    try:
        return benchmarks.get_problem(problem_id)
    except KeyError:
        raise UsageError(
            f"unknown problem {problem_id!r}; available: "
            f"{', '.join(benchmarks.problem_ids())}"
        ) from None


def _cmd_list(args) -> int:
    for pid in benchmarks.problem_ids():
        problem = benchmarks.get_problem(pid)
        print(f"{pid:12s} D={problem.dimension:<4d} {problem.direction.value:3s}  "
              f"{problem.description}")
    return 0


def _cmd_describe(args) -> int:
    problem = _get_problem(args.id)
    opt = problem.optimum
    kind = type(opt).__name__
    print(f"id:          {problem.id}")
    print(f"description: {problem.description}")
    print(f"dimension:   {problem.dimension}")
    print(f"direction:   {problem.direction.value}")
    print(f"bounds:      [{problem.lower.min():g}, {problem.upper.max():g}] per coordinate")
    if problem.integer_coords:
        print(f"integer:     coordinates {sorted(problem.integer_coords)}")
    print(f"constrained: {problem.region is not None}")
    print(f"optimum:     {kind}, value {opt.value:.10g}")
    if isinstance(opt, PointSet):
        for p in opt.points:
            print(f"             at {np.array2string(np.asarray(p), precision=6)}")
    elif isinstance(opt, FlatRegions) and opt.intervals is not None:
        for box in opt.intervals:
            print(f"             region {box}")
    elif isinstance(opt, Curve):
        print(f"             reference curve on {problem.dimension} interior nodes")
    print(f"params:      {problem.params}")
    return 0


def _cmd_eval(args) -> int:
    problem = _get_problem(args.id)
    try:
        point = [float(v) for v in args.x.split(",") if v.strip() != ""]
    except ValueError:
        raise UsageError(f"--x must be a comma-separated list of numbers, got {args.x!r}")
    key = NoiseKey(args.seed, args.eval_index)
    value = evaluate(problem, point, key)
    report = is_feasible(problem, point)
    print(f"value:    {value!r}")
    print(f"feasible: {str(report.feasible).lower()}")
    if report.group_worst:
        print(f"worst residual per group: {[round(r, 12) for r in report.group_worst]}")
    return 0


def _cmd_run(args) -> int:
    overrides = {}
    if args.config is not None:
        with open(args.config) as handle:
            overrides = json.load(handle)
        if not isinstance(overrides, dict):
            raise UsageError("--config must contain a JSON object")
    cfg_map = {
        "problem": args.problem,
        "solver": args.solver,
        "trials": args.trials,
        "seed": args.seed,
        "out": args.out,
        "format": args.format,
    }
    run_kwargs = {k: v for k, v in overrides.items() if k in _RUN_KEYS}
    solver_params = {k: v for k, v in overrides.items() if k not in _RUN_KEYS}
    if solver_params:
        run_kwargs.setdefault("solver_params", {}).update(solver_params)
    for key, value in cfg_map.items():
        if value is not None:
            run_kwargs[key] = value  # CLI flags win over file values
    run_kwargs.setdefault("trials", 1)
    run_kwargs.setdefault("seed", 0)
    if "noise_policy" in run_kwargs and isinstance(run_kwargs["noise_policy"], str):
        run_kwargs["noise_policy"] = NoisePolicy(run_kwargs["noise_policy"])
    cfg = RunConfig(**run_kwargs)
    table = run_trials(cfg)
    sys.stdout.write(emit_report(table, "csv").decode())
    agg = table.aggregates()
    print(f"# success_rate={agg['success_rate']:.2f} "
          f"best={agg['best_value']!r} median={agg['median_value']!r}")
    if cfg.out:
        print(f"# report written to {cfg.out}")
    return 0


def _cmd_verify(args) -> int:
    report = verify_suite()
    for line in report.lines():
        print(line)
    return 0 if report.all_passed else FAILURE


if __name__ == "__main__":
    sys.exit(main())
