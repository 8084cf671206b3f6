"""Command-line interface.

Exit codes: 0 success (or positive verdict), 1 usage / invalid input,
2 I/O failure, 3 negative verdict (not monotone, or verification failed).
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import re
import sys

import numpy as np

from .circ_dist import CardioidCdf, wrap_angle
from .circ_joint import (
    CircularJoint,
    OriginShift,
    fit_lower_bound_parameter,
    unit_grid,
    upper_bound_deviation,
)
from .copula_core import (
    CircularLowerBound,
    CircularUpperBound,
    Independence,
    LowerFrechet,
    MardiaMixture,
    UpperFrechet,
)
from .dependence import NEITHER, NONDECREASING, NONINCREASING, circular_monotone
from .sampling import sample_circular
from .svg import scatter_svg

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_NEGATIVE = 3

OUTPUT_DIR_ENV = "CIRCCOPULA_OUTPUT_DIR"
THEOREM1_TOL = 1e-8

_ANGLE_RE = re.compile(r"^\s*([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_angle(text):
    """Parse radians, accepting ``pi`` multiples such as ``pi/3`` or ``5pi/4``."""
    m = _ANGLE_RE.match(text)
    if m:
        coef, denom = m.groups()
        if coef in ("", "+", "-", None):
            value = -1.0 if coef == "-" else 1.0
        else:
            value = float(coef)
        value *= math.pi
        if denom:
            value /= float(denom)
        return value
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite angle: {text!r}")
    return value


def _ranged(lo, hi, what):
    def parse(text):
        try:
            value = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
        if not (lo <= value <= hi):
            raise argparse.ArgumentTypeError(f"{what} must lie in [{lo}, {hi}], got {value}")
        return value
    return parse


_unit = _ranged(0.0, 1.0, "value")
_gamma = _ranged(-1.0, 1.0, "gamma")
_rho = _ranged(-0.5, 0.5, "rho")


def _count(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _add_marginals(p):
    p.add_argument("--rho-f", type=_rho, default=0.1, help="cardioid concentration of theta")
    p.add_argument("--mu-f", type=parse_angle, default=math.pi, help="cardioid mean of theta")
    p.add_argument("--rho-g", type=_rho, default=0.3, help="cardioid concentration of phi")
    p.add_argument("--mu-g", type=parse_angle, default=math.pi / 3, help="cardioid mean of phi")


def _marginals(args):
    return CardioidCdf(args.rho_f, args.mu_f), CardioidCdf(args.rho_g, args.mu_g)


def _fmt(x):
    return format(float(x), ".17g")


def format_csv(sample):
    """CSV text: one ``# meta:`` line, a ``theta,phi`` header, 17-digit rows.

    Metadata floats use the shortest round-trip form, so ``gamma=0.7``
    rather than its 17-digit expansion.
    """
    meta = " ".join(
        f"{k}={float(v)!r}" if isinstance(v, float) else f"{k}={v}" for k, v in sample.meta.items()
    )
    lines = [f"# meta: {meta}", "theta,phi"]
    lines.extend(f"{_fmt(t)},{_fmt(p)}" for t, p in zip(sample.theta, sample.phi))
    return "\n".join(lines) + "\n"


def read_csv(path):
    """Read ``theta,phi`` columns; comment lines start with ``#``.

    An empty file (or header only) gives zero points.  Raises UsageError on
    malformed content and OSError when the file cannot be read.
    """
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(line for line in fh if not line.startswith("#"))]
    rows = [r for r in rows if r and any(c.strip() for c in r)]
    if not rows:
        return np.empty(0), np.empty(0)
    header = [c.strip() for c in rows[0]]
    if "theta" not in header or "phi" not in header:
        raise UsageError(f"{path}: expected a header with 'theta' and 'phi' columns")
    it, ip = header.index("theta"), header.index("phi")
    theta, phi = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        try:
            t, p = float(row[it]), float(row[ip])
        except (IndexError, ValueError):
            raise UsageError(f"{path}: malformed row {lineno}: {row!r}") from None
        if not (math.isfinite(t) and math.isfinite(p)):
            raise UsageError(f"{path}: non-finite value in row {lineno}")
        theta.append(t)
        phi.append(p)
    return np.array(theta), np.array(phi)


def _default_output(name):
    return os.path.join(os.environ.get(OUTPUT_DIR_ENV, "."), name)


def _write(path, text):
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(text)


def cmd_simulate(args):
    F, G = _marginals(args)
    sample = sample_circular(args.n, F, G, args.gamma, args.a, args.b, args.seed)
    if args.format == "svg":
        text = scatter_svg(sample.theta, sample.phi, title=f"γ={args.gamma:g}")
    else:
        text = format_csv(sample)
    path = args.output or _default_output(f"simulate.{args.format}")
    _write(path, text)
    print(f"wrote {len(sample)} points to {path}")
    return EXIT_OK


def _build_copula(args):
    kind = args.copula
    if kind == "Pi":
        return Independence()
    if kind == "M":
        return UpperFrechet()
    if kind == "W":
        return LowerFrechet()
    if kind == "M_a":
        return CircularUpperBound(args.a)
    if kind == "W_a":
        return CircularLowerBound(args.a)
    return MardiaMixture(args.gamma, args.a, args.b)


def cmd_eval(args):
    value = _build_copula(args)(args.u, args.v)
    print(format(value, ".15g"))
    return EXIT_OK


def cmd_verify_theorem1(args):
    F, G = _marginals(args)
    if args.random:
        rng = np.random.default_rng(args.seed)
        shifts = [OriginShift(*rng.uniform(0.0, 2 * math.pi, 2)) for _ in range(args.random)]
    else:
        shifts = [OriginShift(args.alpha, args.beta)]
    lower = args.bound == "lower"
    J = CircularJoint(LowerFrechet() if lower else UpperFrechet(), F, G)
    worst = 0.0
    for s in shifts:
        if lower:
            grid = unit_grid(args.grid)
            uu, vv = np.meshgrid(grid, grid, indexing="ij")
            a, dev = fit_lower_bound_parameter(J.copula_at(s)(uu, vv), grid)
            label = "W_a (fitted)"
        else:
            dev, a = upper_bound_deviation(J, s, args.grid)
            label = "M_a"
        worst = max(worst, dev)
        print(f"alpha={_fmt(s.alpha)} beta={_fmt(s.beta)} {label} a={a:.15g} deviation={dev:.3e}")
    ok = worst < THEOREM1_TOL
    print(f"max deviation {worst:.3e} ({'PASS' if ok else 'FAIL'} at {THEOREM1_TOL:g})")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_check_monotone(args):
    theta, phi = read_csv(args.input)
    if theta.size == 0:
        raise UsageError(f"{args.input}: no points")
    direction = None if args.direction == "any" else args.direction
    verdict = circular_monotone(np.column_stack((theta, phi)), direction, tol=args.tol)
    line = f"verdict: {verdict.direction}"
    if verdict.witness_cut is not None:
        alpha, beta = verdict.witness_cut
        line += f" witness: alpha={_fmt(alpha)} beta={_fmt(beta)}"
    print(line)
    return EXIT_NEGATIVE if verdict.direction == NEITHER else EXIT_OK


def cmd_plot(args):
    theta, phi = read_csv(args.input)
    _write(args.output, scatter_svg(wrap_angle(theta), wrap_angle(phi), title=args.title))
    print(f"wrote {theta.size} points to {args.output}")
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="circcopula", description="Circular copulas: simulate, evaluate, verify.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="sample the circular Mardia mixture with cardioid marginals")
    p.add_argument("--gamma", type=_gamma, default=0.7)
    p.add_argument("--a", type=_unit, default=0.7)
    p.add_argument("--b", type=_unit, default=0.4)
    _add_marginals(p)
    p.add_argument("--n", type=_count, default=500)
    p.add_argument("--seed", type=_count, default=0)
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.add_argument("-o", "--output", help=f"output path (default: ${OUTPUT_DIR_ENV} or cwd)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("eval", help="evaluate a copula at (u, v)")
    p.add_argument("--copula", choices=("Pi", "M", "W", "M_a", "W_a", "mardia"), default="mardia")
    p.add_argument("--gamma", type=_gamma, default=0.7)
    p.add_argument("--a", type=_unit, default=0.7)
    p.add_argument("--b", type=_unit, default=0.4)
    p.add_argument("u", type=_unit)
    p.add_argument("v", type=_unit)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify-theorem1", help="compare shifted bound copulas with M_a / W_a")
    p.add_argument("--alpha", type=parse_angle, default=0.0)
    p.add_argument("--beta", type=parse_angle, default=0.0)
    p.add_argument("--random", type=_count, default=0, help="check this many random shifts instead")
    p.add_argument("--seed", type=_count, default=0)
    p.add_argument("--grid", type=_count, default=51)
    p.add_argument("--bound", choices=("upper", "lower"), default="upper")
    _add_marginals(p)
    p.set_defaults(func=cmd_verify_theorem1)

    p = sub.add_parser("check-monotone", help="circular monotonicity verdict for a CSV sample")
    p.add_argument("input")
    p.add_argument("--direction", choices=("any", NONDECREASING, NONINCREASING), default="any")
    p.add_argument("--tol", type=_ranged(0.0, math.inf, "tol"), default=0.0)
    p.set_defaults(func=cmd_check_monotone)

    p = sub.add_parser("plot", help="SVG scatter of a theta,phi CSV")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--title")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "grid", 2) < 2:
        print("circcopula: error: --grid must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"circcopula: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"circcopula: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
