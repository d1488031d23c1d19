"""
Command line entry point: `truncexp <command> ...`.

Results go to stdout (or --out), logs and progress to stderr. Exit codes:
0 success, 2 usage error, 3 invalid input, 4 numerical failure.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from . import __version__
from .bayes import (
    DEFAULT_PRIOR,
    GammaPrior,
    bayes_estimate,
    credible_interval,
    posterior_cdf,
    posterior_mass,
)
from .errors import SimulationError, TruncExpError, ValidationError
from .exactdist import ExactDist, cdf, cdf_in_lambda, pdf
from .intervals import IntervalMethod, ci_conditional, ci_unconditional, equation_residuals
from .jointsets import DEFAULT_LAMBDA_CAP, JointSetModel, JointSetSpec, joint_set_boundary
from .model import estimate_lambda, mean_lifetime_estimate, mle, sufficient_stat
from .montecarlo import SUMMARY_COLUMNS, SimConfig, SimSummary, design_grid, run_grid
from .utils.display import get_display_name
from .utils.grid import parse_grid
from .utils.log import configure_logging
from .utils.reference_tables import compare_with_reference
from .utils.sample_io import read_sample
from .utils.settings import get_worker_count

FLOAT_FORMAT = "%.7g"


def _fmt(value: Optional[float]) -> str:
    return "n/a" if value is None else FLOAT_FORMAT % value


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_table(frame: pd.DataFrame, out: Optional[str]) -> None:
    _emit(frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n"), out)


def cmd_estimate(args: argparse.Namespace) -> int:
    sample = read_sample(args.input)
    stat = sufficient_stat(sample)
    lam_hat = estimate_lambda(sample)
    if args.format == "json":
        report = {
            "n": sample.n,
            "T": sample.T,
            "D": stat.D,
            "S": stat.S,
            "lambda_hat": lam_hat,
            "mle": mle(sample),
            "theta_hat": mean_lifetime_estimate(sample),
        }
        print(json.dumps(report))
        return 0

    print(f"n          = {sample.n}")
    print(f"T          = {_fmt(sample.T)}")
    print(f"D          = {stat.D}")
    print(f"S          = {_fmt(stat.S)}")
    print(f"lambda_hat = {_fmt(lam_hat)}")
    if stat.D == 0:
        print("note: MLE of lambda does not exist when D=0; lambda_hat is 0")
    else:
        print(f"theta_hat  = {_fmt(mean_lifetime_estimate(sample))}")
    return 0


def cmd_ci(args: argparse.Namespace) -> int:
    sample = read_sample(args.input)
    if args.method == IntervalMethod.CONDITIONAL:
        result = ci_conditional(sample, args.alpha)
    else:
        result = ci_unconditional(sample, args.alpha)
    lower_residual, upper_residual = equation_residuals(sample, result)

    if args.format == "json":
        report: Dict[str, Any] = result.to_dict()
        report["residuals"] = {"lower": lower_residual, "upper": upper_residual}
        print(json.dumps(report))
        return 0

    print(f"{get_display_name(result.method)}, {result.sided}, level {_fmt(result.level)}")
    print(f"lower = {_fmt(result.lower)}")
    print(f"upper = {_fmt(result.upper)}")
    print(f"residual(lower) = {_fmt(lower_residual)}")
    print(f"residual(upper) = {_fmt(upper_residual)}")
    return 0


def cmd_cri(args: argparse.Namespace) -> int:
    sample = read_sample(args.input)
    prior = GammaPrior(a=args.prior_a, b=args.prior_b)
    result = credible_interval(sample, prior, args.alpha)
    estimate = bayes_estimate(sample, prior)
    mass = posterior_mass(sample, prior, result.lower, result.upper)
    at = parse_grid(args.at) if args.at else []
    cdf_values = [posterior_cdf(sample, prior, float(lam)) for lam in at]

    if args.format == "json":
        report: Dict[str, Any] = result.to_dict()
        report["estimate"] = estimate
        report["prior"] = {"a": prior.a, "b": prior.b}
        report["posterior_mass"] = mass
        if at:
            report["posterior_cdf"] = [
                {"lambda": float(lam), "cdf": value} for lam, value in zip(at, cdf_values)
            ]
        print(json.dumps(report))
        return 0

    print(f"prior a = {_fmt(prior.a)}, b = {_fmt(prior.b)}")
    print(f"bayes estimate = {_fmt(estimate)}")
    print(f"lower = {_fmt(result.lower)}")
    print(f"upper = {_fmt(result.upper)}")
    print(f"posterior mass = {_fmt(mass)} (target {_fmt(result.level)})")
    for lam, value in zip(at, cdf_values):
        print(f"P(lambda <= {_fmt(lam)} | data) = {_fmt(value)}")
    return 0


def cmd_dist(args: argparse.Namespace) -> int:
    grid = parse_grid(args.grid)
    if args.what == "cdf-in-lambda":
        if args.b is None:
            raise ValidationError("--what cdf-in-lambda needs the fixed estimate value --b")
        frame = pd.DataFrame(
            {"lambda": grid, "cdf": cdf_in_lambda(args.n, args.T, args.b, grid)}
        )
    else:
        if args.lam is None:
            raise ValidationError(f"--what {args.what} needs --lambda")
        dist = ExactDist(n=args.n, T=args.T, lam=args.lam)
        law = cdf if args.what == "cdf" else pdf
        frame = pd.DataFrame({"x": grid, args.what: [law(dist, x) for x in grid]})
    _emit_table(frame, args.out)
    return 0


def cmd_joint_set(args: argparse.Namespace) -> int:
    spec = JointSetSpec(model=args.model, n=args.n, T=args.T, alpha=args.alpha)
    points = joint_set_boundary(spec, parse_grid(args.grid), lambda_cap=args.lambda_cap)
    axis = "mu" if spec.model == JointSetModel.TWO_PARAM_EXPONENTIAL else "beta"
    frame = pd.DataFrame(
        {
            axis: [p.theta1 for p in points],
            "lambda": [p.theta2 for p in points],
            "capped": [p.capped for p in points],
        }
    )
    _emit_table(frame, args.out)
    return 0


def _configs_from_file(path: str) -> List[SimConfig]:
    try:
        data = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ValidationError(f"{path}: no such file")
    except json.JSONDecodeError as e:
        raise ValidationError(f"{path}:{e.lineno}: invalid JSON: {e.msg}")
    if not isinstance(data, dict) or not isinstance(data.get("cells"), list):
        raise ValidationError(f"{path}: expected an object with a 'cells' list")
    seed = int(data.get("seed", 0))
    replications = int(data.get("replications", 5000))
    alpha = float(data.get("alpha", 0.05))
    return [SimConfig.from_dict(cell, seed, replications, alpha) for cell in data["cells"]]


def _simulate_configs(args: argparse.Namespace) -> List[SimConfig]:
    if args.paper_tables:
        return design_grid(
            replications=args.replications,
            seed=args.seed,
            alpha=args.alpha,
            prior=GammaPrior(a=args.prior_a, b=args.prior_b),
        )
    if args.config:
        return _configs_from_file(args.config)
    cell_flags = (("--n", args.n), ("--lambda", args.lam), ("--T", args.T))
    missing = [flag for flag, value in cell_flags if value is None]
    if missing:
        raise ValidationError(
            f"simulate needs --paper-tables, --config or a single cell ({', '.join(missing)})"
        )
    prior = None
    if args.method == IntervalMethod.BAYES:
        prior = GammaPrior(a=args.prior_a, b=args.prior_b)
    return [
        SimConfig(
            method=args.method,
            n=args.n,
            lambda_true=args.lam,
            T=args.T,
            alpha=args.alpha,
            replications=args.replications,
            seed=args.seed,
            prior=prior,
        )
    ]


def _print_progress(message: str, pct: int) -> None:
    print(f"[{pct:3d}%] {message}", file=sys.stderr)


def _print_comparison(summaries: Sequence[SimSummary]) -> None:
    for summary in summaries:
        comparison = compare_with_reference(summary)
        label = f"{summary.method} n={summary.n} lambda={summary.lambda_true} T={summary.T}"
        if comparison is None:
            print(f"{label}: no published value", file=sys.stderr)
        elif comparison["failures"]:
            print(f"{label}: OUTSIDE {'; '.join(comparison['failures'])}", file=sys.stderr)
        else:
            print(f"{label}: matches published value", file=sys.stderr)
        if comparison is not None:
            for note in comparison["known"]:
                print(f"{label}: known deviation, {note}", file=sys.stderr)


def cmd_simulate(args: argparse.Namespace) -> int:
    configs = _simulate_configs(args)
    workers = get_worker_count(args.workers)
    result = run_grid(configs, workers=workers, progress_cb=_print_progress)

    rows = [summary.to_dict() for summary in result.summaries]
    if args.format == "json":
        _emit(json.dumps(rows, indent=2) + "\n", args.out)
    else:
        _emit_table(pd.DataFrame(rows, columns=list(SUMMARY_COLUMNS)), args.out)

    if args.compare:
        _print_comparison(result.summaries)
    if result.errors:
        for key, message in result.errors.items():
            print(f"error: cell {key}: {message}", file=sys.stderr)
        return SimulationError.exit_code
    return 0


def _add_sample_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", help="sample file (.json or .csv)")
    parser.add_argument("--alpha", type=float, default=0.05, help="1 - confidence level")
    parser.add_argument("--format", choices=["json", "text"], default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="truncexp",
        description="Exact inference for the exponential rate from time truncated samples",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--verbose", action="store_true", help="log debug messages to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("estimate", help="D, S and lambda_hat for a sample file")
    p.add_argument("input", help="sample file (.json or .csv)")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(handler=cmd_estimate)

    p = commands.add_parser("ci", help="exact confidence interval for lambda")
    _add_sample_arguments(p)
    p.add_argument(
        "--method",
        choices=[IntervalMethod.UNCONDITIONAL, IntervalMethod.CONDITIONAL],
        default=IntervalMethod.UNCONDITIONAL,
    )
    p.set_defaults(handler=cmd_ci)

    p = commands.add_parser("cri", help="credible interval under a gamma prior")
    _add_sample_arguments(p)
    p.add_argument("--prior-a", type=float, default=DEFAULT_PRIOR.a, help="prior shape")
    p.add_argument("--prior-b", type=float, default=DEFAULT_PRIOR.b, help="prior rate")
    p.add_argument("--at", help="rates for the posterior cdf: start:stop:num or a comma list")
    p.set_defaults(handler=cmd_cri)

    p = commands.add_parser("dist", help="curves of the exact law of lambda_hat (CSV)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, help="true rate (cdf, pdf)")
    p.add_argument("--b", type=float, help="fixed estimate value (cdf-in-lambda)")
    p.add_argument("--what", choices=["cdf", "pdf", "cdf-in-lambda"], default="cdf")
    p.add_argument("--grid", required=True, help="start:stop:num or a comma list")
    p.add_argument("--out", help="write the CSV here instead of stdout")
    p.set_defaults(handler=cmd_dist)

    p = commands.add_parser("joint-set", help="joint confidence set boundary when D = 0 (CSV)")
    p.add_argument("--model", choices=list(JointSetModel.ALL), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--grid", required=True, help="mu axis (two-param-exponential) or beta axis")
    p.add_argument("--lambda-cap", type=float, default=DEFAULT_LAMBDA_CAP)
    p.add_argument("--out", help="write the CSV here instead of stdout")
    p.set_defaults(handler=cmd_joint_set)

    p = commands.add_parser("simulate", help="Monte Carlo coverage study")
    source = p.add_mutually_exclusive_group()
    source.add_argument("--paper-tables", action="store_true", help="the 24-cell design, 3 methods")
    source.add_argument("--config", help="JSON file with seed, replications, alpha and cells")
    p.add_argument(
        "--method", choices=list(IntervalMethod.ALL), default=IntervalMethod.UNCONDITIONAL
    )
    p.add_argument("--n", type=int)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--T", type=float)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--replications", type=int, default=5000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prior-a", type=float, default=DEFAULT_PRIOR.a)
    p.add_argument("--prior-b", type=float, default=DEFAULT_PRIOR.b)
    p.add_argument("--workers", type=int, help="worker processes (default: TRUNCEXP_WORKERS or 1)")
    p.add_argument("--out", help="write the table here instead of stdout")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--compare", action="store_true", help="check cells against published values")
    p.set_defaults(handler=cmd_simulate)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        return args.handler(args)
    except TruncExpError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
