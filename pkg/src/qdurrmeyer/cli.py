"""Command-line front end.

Exit codes: 0 on success, 1 when a hypothesis or domain check fails (the
message names the violated precondition), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import harness
from .durrmeyer import moment_table, u_apply_direct, u_apply_series
from .errors import QDurrmeyerError
from .numeric import NumericMode, RationalComplex, parse_mode
from .qcore import QContext
from .series import DEFAULT_SAMPLES, DEFAULT_TRUNCATION, builtin_series, parse_series_spec
from .voronovskaja import lq_direct, lq_series

EXPERIMENTS = {
    "converge": harness.convergence_experiment,
    "voronovskaja": harness.voronovskaja_experiment,
    "lowerbound": harness.lower_bound_experiment,
    "saturate": harness.saturation_diagnostic,
}


SERIES_NAMES = ("exp", "monomial", "geometric", "poly")


class UsageError(Exception):
    pass


def _mode(text: str) -> NumericMode:
    try:
        return parse_mode(text)
    except (ValueError, QDurrmeyerError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _fn(text: str) -> str:
    head, _ = parse_series_spec(text)
    if head not in SERIES_NAMES:
        raise argparse.ArgumentTypeError(f"unknown function {text!r}; expected one of {', '.join(SERIES_NAMES)}")
    return text


def _complex_pair(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}")
    try:
        for p in parts:
            Fraction(p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two decimal literals, got {text!r}") from None
    return tuple(p.strip() for p in parts)


def _q_value(text: str, mode: NumericMode):
    text = text.strip()
    try:
        value = Fraction(text)
    except ValueError:
        raise UsageError(f"--q: cannot parse {text!r}") from None
    if mode.is_exact:
        if any(c in text for c in ".eE"):
            raise UsageError("--q must be an integer or a fraction P/Q in rational mode")
        return value
    return text if "/" not in text else value


def _z_value(pair: tuple, mode: NumericMode):
    re, im = pair
    if mode.is_exact:
        return RationalComplex(Fraction(re), Fraction(im))
    return mode.complex(re, im)


def _scalar_text(x, mode: NumericMode) -> str:
    if mode.is_exact:
        return str(x)
    return format(float(x), ".16g") if mode.precision_bits == 53 else str(x)


def format_value(v, mode: NumericMode) -> str:
    """Real values as a single number, complex ones as ``RE,IM``."""
    zc = mode.to_complex(v)
    if zc.imag == 0:
        return _scalar_text(zc.real, mode)
    return f"{_scalar_text(zc.real, mode)},{_scalar_text(zc.imag, mode)}"


def _common(p: argparse.ArgumentParser, q_required: bool = True):
    p.add_argument("--q", required=q_required, help="deformation parameter, decimal or P/Q")
    p.add_argument("--mode", type=_mode, default=NumericMode.float(53), help="rational | float | float:BITS")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qdurrmeyer", description="genuine q-Bernstein-Durrmeyer operators on complex disks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="print U_{n,q}(f; z)")
    _common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--fn", type=_fn, required=True)
    p.add_argument("--z", type=_complex_pair, required=True)
    p.add_argument("--path", choices=("series", "direct"), default="series")
    p.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION)

    p = sub.add_parser("moment", help="print the coefficients of U_{n,q}(e_m)")
    _common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("lq", help="print L_q(f; z) by the series and the q-difference paths")
    _common(p)
    p.add_argument("--fn", type=_fn, required=True)
    p.add_argument("--z", type=_complex_pair, required=True)
    p.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION)

    for name, func in EXPERIMENTS.items():
        p = sub.add_parser(name, help=(func.__doc__ or "").strip().splitlines()[0])
        _common(p)
        p.add_argument("--fn", type=_fn, default="exp")
        p.add_argument("--r", default="1")
        p.add_argument("--n-min", type=int, default=2)
        p.add_argument("--n-max", type=int, default=16)
        p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
        p.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION)
        p.add_argument("--out", choices=harness.FORMATS, default="csv")
        p.add_argument("--out-file")

    p = sub.add_parser("verify", help="run the exact identity suite")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--m-max", type=int, default=8)
    return parser


def _emit(text: str, out_file: str | None):
    if out_file:
        with open(out_file, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {out_file}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _run(args) -> int:
    if args.command == "verify":
        grid = harness.IdentityGrid(n_max=args.n_max, m_max=args.m_max)
        result = harness.identity_suite(grid)
        print(result.table())
        return 0 if result.passed else 1

    mode = args.mode
    q = _q_value(args.q, mode)
    ctx = QContext(q, mode)

    if args.command == "moment":
        print(moment_table(args.n, ctx, args.m).row(args.m))
        return 0

    if args.command == "eval":
        f = builtin_series(args.fn, args.truncation, mode)
        z = _z_value(args.z, mode)
        if args.path == "direct":
            value = u_apply_direct(args.n, ctx, f, z)
        else:
            value = u_apply_series(args.n, ctx, f, z)
        print(format_value(value, mode))
        return 0

    if args.command == "lq":
        f = builtin_series(args.fn, args.truncation, mode)
        z = _z_value(args.z, mode)
        print(f"series {format_value(lq_series(f, ctx, z), mode)}")
        print(f"direct {format_value(lq_direct(f, ctx, z), mode)}")
        return 0

    r = args.r
    if mode.is_exact:
        r = Fraction(r)
    cfg = harness.ExperimentConfig(
        fn=args.fn, q=q, r=r, n_min=args.n_min, n_max=args.n_max, samples=args.samples,
        mode=mode, out_format=args.out, truncation=args.truncation,
    )
    report = EXPERIMENTS[args.command](cfg)
    _emit(report.render(args.out), args.out_file)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qdurrmeyer: error: {exc}", file=sys.stderr)
        return 2
    except (QDurrmeyerError, ZeroDivisionError) as exc:
        print(f"qdurrmeyer: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
