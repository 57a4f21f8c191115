"""Command-line entry point.

Subcommands write CSV (to ``--out`` or standard output) or ``key=value``
reports. Exit status: 0 on success, 2 on argument errors, 3 on numeric
failures.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

from . import experiments as ex
from .combine import CombinationRule
from .errors import (
    AccuracyError,
    ArgumentError,
    DomainError,
    MomentError,
    MultimodalityError,
    ParameterDomainError,
    RangeError,
)
from .pvalue import NormalMeanFamily
from .regions import Region

EXIT_ARGS = 2
EXIT_NUMERIC = 3


def _region(text: str) -> Region:
    try:
        lo, hi = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi', got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("region bounds out of order")
    return Region.interval(lo, hi)


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="confmeta", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--reps", type=int, default=2000)
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    sub = p.add_subparsers(dest="subcommand", required=True)

    f = sub.add_parser("fig1", parents=[common], help="binomial confidence levels against n")
    f.add_argument("--n-max", type=int, default=100)
    f.add_argument("--theta", type=_fraction, default=Fraction(2, 3),
                   help="true success probability; fractions like 2/3 are exact")
    f.add_argument("--region", type=_region, default=Region.interval(0.25, 0.75))

    c = sub.add_parser("coverage-audit", parents=[common], help="exact binomial coverage")
    c.add_argument("--n", type=int, default=10)
    c.add_argument("--thetas", type=_floats, default=[k / 20 for k in range(1, 20)])
    c.add_argument("--rhos", type=_floats, default=[0.5, 0.8, 0.9, 0.95])
    c.add_argument("--alpha", type=float, default=None, help="default: (1 - rho) / 2")

    k = sub.add_parser("consistency", parents=[common],
                       help="confidence level vs two-sided p-value as n grows")
    k.add_argument("--n-list", type=_ints, default=[10, 100, 1000])
    k.add_argument("--theta", type=float, default=0.5)
    k.add_argument("--region", type=_region, default=None, help="default: open (0, 1)")
    k.add_argument("--sigma", type=float, default=1.0)

    s = sub.add_parser("regions-sphere", parents=[common], help="confidence for a spherical shell")
    s.add_argument("--dim", type=int, default=2)
    s.add_argument("--norm", type=float, default=2.0)
    s.add_argument("--region", default="1,4", help="inner,outer radius; outer may be 'inf'")

    b = sub.add_parser("bioequiv", parents=[common], help="three-way equivalence split")
    b.add_argument("--theta0", type=float, default=0.0)
    b.add_argument("--delta", type=float, default=math.log(1.25))
    b.add_argument("--n", type=int, default=20)
    b.add_argument("--mean", type=float, default=0.05)
    b.add_argument("--sd", type=float, default=0.2)

    d = sub.add_parser("combine-demo", parents=[common], help="combine two normal studies")
    d.add_argument("--theta", type=float, default=1.0)
    d.add_argument("--sigma", type=float, default=2.0)
    d.add_argument("--n", type=int, default=5)
    d.add_argument("--rule", choices=["inverse_normal", "fisher"], default="inverse_normal")
    return p


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as err:
        raise ArgumentError(f"cannot write {out}: {err.strerror}") from None


def run(args: argparse.Namespace) -> None:
    cmd = args.subcommand
    if args.reps < 1:
        raise ArgumentError("--reps must be at least 1")
    if cmd == "fig1":
        rows = ex.run_fig1(args.n_max, args.theta, args.region)
        _emit(ex.format_csv(rows, ex.FIG1_COLUMNS), args.out)
    elif cmd == "coverage-audit":
        rows = ex.run_coverage_audit(args.n, args.thetas, args.rhos, args.alpha)
        _emit(ex.format_csv(rows, ex.COVERAGE_COLUMNS), args.out)
    elif cmd == "consistency":
        region = args.region if args.region is not None else Region.open(0, 1)
        rows, warns = ex.run_consistency(args.n_list, args.theta, region, args.reps, args.seed,
                                         args.sigma)
        _emit(ex.format_csv(rows, ex.CONSISTENCY_COLUMNS, [f"warning: {w}" for w in warns]),
              args.out)
    elif cmd == "regions-sphere":
        try:
            lo, hi = (float(v) for v in args.region.split(","))
        except ValueError:
            raise ArgumentError(f"--region expects 'inner,outer', got {args.region!r}") from None
        _emit(ex.format_report(ex.run_regions_sphere(args.dim, args.norm, lo, hi)), args.out)
    elif cmd == "bioequiv":
        fam = NormalMeanFamily(args.n, args.mean, args.sd)
        _emit(ex.format_report(ex.run_bioequiv(args.theta0, args.delta, fam)), args.out)
    elif cmd == "combine-demo":
        rep = ex.run_combine_demo(args.theta, args.sigma, args.n, args.reps, args.seed,
                                  CombinationRule(args.rule))
        _emit(ex.format_report(rep), args.out)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        run(args)
    except (ArgumentError, ParameterDomainError, DomainError) as err:
        print(f"confmeta {args.subcommand}: {err}", file=sys.stderr)
        return EXIT_ARGS
    except (AccuracyError, MomentError, MultimodalityError, RangeError, ArithmeticError) as err:
        print(f"confmeta {args.subcommand}: numeric failure: {err}", file=sys.stderr)
        return EXIT_NUMERIC
    return 0


if __name__ == "__main__":
    sys.exit(main())
