"""torsmooth command line tool.

Subcommands: ``smooth`` (generic x-y smoothing), ``reduce`` (torque-twist
record to shear stress-strain curve), ``outliers`` (robust residual
screening), ``synth`` (synthetic torque-twist fixtures from a known
stress profile), and ``coeffs`` (Savitzky-Golay weight inspection).

Exit codes: 0 success, 2 input parse/validation failure, 3 computation
failure (module error message passed through verbatim), 4 usage error.
Outputs carry '#' provenance headers (tool version, command line,
configuration) and no timestamps, so reruns are byte-identical.
"""

import argparse
import shlex
import sys

import numpy as np

from . import __version__
from .errors import InvalidSpecError, ParseError, TorsmoothError
from .io import ColumnSpec, read_pairs, write_csv
from .kernels import Kernel
from .loess import LoessSpec
from .outliers import detect_outliers, remove_outliers
from .savgol import SavGolSpec, savgol_coefficients
from .smoothers import SmootherSpec, apply_smoother
from .splines import SmoothParam
from .svgplot import Layer, write_svg
from .torsion import (
    ReductionConfig,
    SavGolDerivative,
    SpecimenGeometry,
    SplineDerivative,
    TorqueTwist,
    elastic_profile,
    power_law_profile,
    prepare,
    reduce_prepared,
    torque_curve,
    voce_profile,
)

_RAW_COLOR = "#9ecae1"  # light blue for measured points
_FIT_COLOR = "#08306b"  # dark blue for fitted curves

_TWIST_UNITS = {
    "rad": "radians",
    "radians": "radians",
    "deg": "degrees",
    "degrees": "degrees",
}
_KERNELS = {
    "gaussian": Kernel.GAUSSIAN,
    "epanechnikov": Kernel.EPANECHNIKOV,
    "minvar": Kernel.MINIMUM_VARIANCE,
}
_SMOOTHERS = ("loess", "savgol", "kernel", "smoothing-spline")

# fixture generation mimics the data acquisition described for the
# source experiments: fixed-rate logging during a constant-rate twist
_SAMPLE_HZ = 100.0


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad flags; we reserve 2 for data errors."""

    def error(self, message):
        raise _UsageError(message)


def _column_flags(p, units=True):
    g = p.add_argument_group("input columns")
    g.add_argument("--x-col", default="0", metavar="COL",
                   help="x column index or header name (default 0)")
    g.add_argument("--y-col", default="1", metavar="COL",
                   help="y column index or header name (default 1)")
    if units:
        g.add_argument("--x-unit", default="dimensionless",
                       choices=["radians", "degrees", "seconds",
                                "dimensionless"])
        g.add_argument("--y-unit", default="dimensionless",
                       choices=["newton-meter", "newton-millimeter", "pascal",
                                "dimensionless"])


def _smoother_flags(p):
    g = p.add_argument_group("smoother parameters")
    g.add_argument("--span", type=float, default=0.3,
                   help="loess: neighborhood fraction (default 0.3)")
    g.add_argument("--degree", type=int, default=None,
                   help="local polynomial degree (loess default 1, "
                        "savgol default 3)")
    g.add_argument("--robust-iters", type=int, default=0,
                   help="loess: robustness iterations (default 0)")
    g.add_argument("--delta", default="0", metavar="DX",
                   help="loess: fit-point spacing; a distance, or 'auto' "
                        "for 1%% of the x range (default 0: fit everywhere)")
    g.add_argument("--window", type=int, default=99,
                   help="savgol: odd window length (default 99)")
    g.add_argument("--kernel", choices=sorted(_KERNELS), default="gaussian",
                   help="kernel: weight function (default gaussian)")
    g.add_argument("--bandwidth", type=float, default=None,
                   help="kernel: bandwidth in x units (required for kernel)")
    g.add_argument("--smooth-param", type=float, default=None,
                   help="smoothing-spline: penalty p >= 0 (required for "
                        "smoothing-spline)")


def _col(tok):
    try:
        return int(tok)
    except (ValueError, TypeError):
        return tok


def _parse_delta(tok, x_range):
    if tok == "auto":
        return 0.01 * float(x_range)
    try:
        return float(tok)
    except ValueError:
        raise _UsageError(
            f"--delta must be a number or 'auto', got {tok!r}"
        ) from None


def _make_smoother(method, args, x_range) -> SmootherSpec:
    if method == "loess":
        degree = 1 if args.degree is None else args.degree
        return SmootherSpec.loess(LoessSpec(
            span=args.span,
            degree=degree,
            robust_iters=args.robust_iters,
            delta=_parse_delta(args.delta, x_range),
        ))
    if method == "savgol":
        degree = 3 if args.degree is None else args.degree
        return SmootherSpec.savgol(SavGolSpec(args.window, degree, 0))
    if method == "kernel":
        if args.bandwidth is None:
            raise _UsageError("--bandwidth is required with the kernel method")
        return SmootherSpec.kernel(_KERNELS[args.kernel], args.bandwidth)
    if args.smooth_param is None:
        raise _UsageError(
            "--smooth-param is required with the smoothing-spline method"
        )
    return SmootherSpec.smoothing_spline(SmoothParam(args.smooth_param))


def _provenance(argv, extra=()):
    lines = [
        f"torsmooth {__version__}",
        "command: torsmooth " + shlex.join(argv),
    ]
    lines.extend(extra)
    return lines


# ------------------------------------------------------------- smooth


def _run_smooth(args, argv):
    cols = ColumnSpec(_col(args.x_col), _col(args.y_col),
                      args.x_unit, args.y_unit)
    s = read_pairs(args.input, cols)
    spec = _make_smoother(args.method, args, s.xs[-1] - s.xs[0])
    out = apply_smoother(s, spec)
    write_csv(
        args.output,
        ["x", "y_raw", "y_smooth"],
        [s.xs, s.ys, out.ys],
        _provenance(argv, [f"method: {args.method}",
                           f"config: {spec.params!r}"]),
    )
    if args.svg:
        write_svg(
            args.svg,
            [
                Layer(s.xs, s.ys, kind="points", color=_RAW_COLOR,
                      label="raw"),
                Layer(out.xs, out.ys, kind="line", color=_FIT_COLOR,
                      label=args.method),
            ],
            title=f"{args.method} smooth of {args.input}",
            x_label="x", y_label="y",
        )
    return 0


# ------------------------------------------------------------- reduce


def _run_reduce(args, argv):
    if args.twist_rate is not None and not args.twist_rate > 0.0:
        raise _UsageError(
            f"--twist-rate must be positive, got {args.twist_rate}"
        )
    cols = ColumnSpec(_col(args.x_col), _col(args.y_col),
                      _TWIST_UNITS[args.twist_unit], args.torque_unit)
    s = read_pairs(args.input, cols)
    geom = SpecimenGeometry(radius=args.radius_mm * 1e-3,
                            length=args.length_mm * 1e-3)
    smoother = None
    if args.smoother != "none":
        smoother = _make_smoother(args.smoother, args,
                                  s.xs[-1] - s.xs[0])
    if args.derivative == "savgol":
        derivative = SavGolDerivative(args.deriv_window, args.deriv_degree)
    else:
        derivative = SplineDerivative(SmoothParam(args.deriv_param))
    cfg = ReductionConfig(
        derivative,
        method=args.method,
        smoother=smoother,
        resample=args.resample if args.resample else max(s.n, 16),
    )
    try:
        tt = TorqueTwist(s, args.twist_rate)
    except ValueError as exc:  # negative twist angles are a data problem
        raise ParseError(str(exc)) from exc
    cond = prepare(tt, cfg)
    out = reduce_prepared(cond, geom, cfg, args.twist_rate)
    extra = [
        f"method: {out.method}",
        f"geometry: radius_mm={args.radius_mm!r} length_mm={args.length_mm!r}",
        f"smoother: {args.smoother}"
        + ("" if smoother is None else f" {smoother.params!r}"),
        f"derivative: {derivative!r}",
        f"resample: {cfg.resample}",
    ]
    if out.strain_rate is not None:
        extra.append(f"shear_strain_rate_per_s: {out.strain_rate!r}")
    write_csv(
        args.output,
        ["theta_rad", "torque_nm", "gamma", "tau_pa"],
        [cond.xs, cond.ys, out.series.xs, out.series.ys],
        _provenance(argv, extra),
    )
    if args.svg:
        write_svg(
            args.svg,
            [Layer(out.series.xs, out.series.ys, kind="line",
                   color=_FIT_COLOR, label=out.method)],
            title=f"reduced shear stress vs strain ({out.method})",
            x_label="shear strain", y_label="shear stress [Pa]",
        )
    return 0


# ----------------------------------------------------------- outliers


def _run_outliers(args, argv):
    cols = ColumnSpec(_col(args.x_col), _col(args.y_col),
                      args.x_unit, args.y_unit)
    s = read_pairs(args.input, cols)
    ref = LoessSpec(
        span=args.span,
        degree=1 if args.degree is None else args.degree,
        robust_iters=args.robust_iters,
        delta=_parse_delta(args.delta, s.xs[-1] - s.xs[0]),
    )
    report = detect_outliers(s, ref, k=args.k)
    extra = [f"reference: {ref!r}", f"k: {args.k!r}",
             f"flagged: {report.count} of {s.n}"]
    if args.delete:
        cleaned = remove_outliers(s, report)
        write_csv(args.output, ["x", "y"], [cleaned.xs, cleaned.ys],
                  _provenance(argv, extra))
        # deletion is always announced, never silent
        print(f"removed {report.count} of {s.n} points", file=sys.stderr)
    else:
        idx = report.indices
        write_csv(
            args.output,
            ["index", "x", "y", "residual"],
            [idx, s.xs[idx], s.ys[idx], report.residuals],
            _provenance(argv, extra),
        )
    return 0


# -------------------------------------------------------------- synth


def _run_synth(args, argv):
    if args.n < 2:
        raise _UsageError(f"--n must be at least 2, got {args.n}")
    if not args.rate > 0.0:
        raise _UsageError(f"--rate must be positive, got {args.rate}")
    if args.sigma < 0.0:
        raise _UsageError(f"--sigma must be nonnegative, got {args.sigma}")
    geom = SpecimenGeometry(radius=args.radius_mm * 1e-3,
                            length=args.length_mm * 1e-3)
    if args.profile == "elastic":
        tau = elastic_profile(args.shear_modulus_gpa * 1e9)
        detail = f"shear_modulus_gpa: {args.shear_modulus_gpa!r}"
    elif args.profile == "power-law":
        tau = power_law_profile(args.amplitude_mpa * 1e6, args.exponent)
        detail = (f"amplitude_mpa: {args.amplitude_mpa!r}, "
                  f"exponent: {args.exponent!r}")
    else:
        tau = voce_profile()
        detail = "voce constants: tau0=1e8 tau_sat=3e8 gamma_c=0.4 soften=20"
    # constant surface strain rate, logged at the acquisition frequency;
    # sampling starts one tick in so the first twist angle is positive
    twist_rate = args.rate * geom.length / geom.radius
    t = np.arange(1, args.n + 1) / _SAMPLE_HZ
    theta = twist_rate * t
    torque = torque_curve(tau, theta, geom)
    if args.sigma > 0.0:
        rng = np.random.default_rng(args.seed)
        torque = torque * (1.0 + args.sigma * rng.standard_normal(args.n))
    write_csv(
        args.output,
        ["theta_rad", "torque_nm"],
        [theta, torque],
        _provenance(argv, [
            f"profile: {args.profile}",
            detail,
            f"shear_strain_rate_per_s: {args.rate!r}",
            f"sigma_multiplicative: {args.sigma!r}",
            f"seed: {args.seed}",
            f"n: {args.n}",
            f"sample_hz: {_SAMPLE_HZ!r}",
            f"geometry: radius_mm={args.radius_mm!r} "
            f"length_mm={args.length_mm!r}",
            f"twist_rate_rad_per_s: {twist_rate!r}",
        ]),
    )
    return 0


# ------------------------------------------------------------- coeffs


def _run_coeffs(args, argv):
    spec = SavGolSpec(args.window, args.degree, args.deriv)
    for c in savgol_coefficients(spec).tolist():
        print(repr(c))
    return 0


# -------------------------------------------------------------- wiring


def _build_parser():
    parser = _Parser(
        prog="torsmooth",
        description="Smooth noisy 2-D records and reduce torsion-test "
                    "torque-twist data to shear stress-strain curves.",
    )
    parser.add_argument("--version", action="version",
                        version=f"torsmooth {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True, metavar="COMMAND")

    p = sub.add_parser("smooth", help="smooth an x-y CSV file")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--method", required=True, choices=_SMOOTHERS)
    _smoother_flags(p)
    _column_flags(p)
    p.add_argument("--svg", default=None, metavar="PATH",
                   help="also write an SVG overlay of raw and smoothed data")
    p.set_defaults(func=_run_smooth)

    p = sub.add_parser("reduce",
                       help="reduce a torque-twist record to stress-strain")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--twist-unit", required=True,
                   choices=sorted(_TWIST_UNITS),
                   help="unit of the twist column (mandatory)")
    p.add_argument("--radius-mm", type=float, required=True,
                   help="specimen gauge radius in mm (mandatory; the "
                        "radius, not the diameter)")
    p.add_argument("--length-mm", type=float, required=True,
                   help="specimen gauge length in mm (mandatory)")
    p.add_argument("--torque-unit", default="newton-meter",
                   choices=["newton-meter", "newton-millimeter"])
    p.add_argument("--method", default="fields-backofen",
                   choices=["fields-backofen", "hill"])
    p.add_argument("--smoother", default="none",
                   choices=("none",) + _SMOOTHERS,
                   help="smoother applied to the torque record "
                        "(default none)")
    _smoother_flags(p)
    p.add_argument("--derivative", default="savgol",
                   choices=["savgol", "spline"])
    p.add_argument("--deriv-window", type=int, default=99,
                   help="savgol derivative window (default 99)")
    p.add_argument("--deriv-degree", type=int, default=3,
                   help="savgol derivative degree (default 3)")
    p.add_argument("--deriv-param", type=float, default=0.0,
                   help="spline derivative penalty (default 0)")
    p.add_argument("--resample", type=int, default=0,
                   help="uniform grid size (default: input point count)")
    p.add_argument("--twist-rate", type=float, default=None,
                   help="constant twist rate in rad/s, recorded as a "
                        "shear strain rate")
    _column_flags(p, units=False)
    p.add_argument("--svg", default=None, metavar="PATH",
                   help="also write an SVG of the reduced curve")
    p.set_defaults(func=_run_reduce)

    p = sub.add_parser("outliers",
                       help="flag (or delete) spikes against a robust trend")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--k", type=float, default=3.0,
                   help="flag residuals beyond k robust deviations "
                        "(default 3)")
    p.add_argument("--delete", action="store_true",
                   help="write the cleaned series instead of the report")
    _smoother_flags(p)
    _column_flags(p)
    # the robust reference needs reweighting passes, so the loess
    # default of 0 iterations is overridden here
    p.set_defaults(func=_run_outliers, robust_iters=3)

    p = sub.add_parser("synth",
                       help="generate a synthetic torque-twist CSV")
    p.add_argument("output")
    p.add_argument("--profile", required=True,
                   choices=["elastic", "power-law", "voce-like"])
    p.add_argument("--n", type=int, required=True,
                   help="number of samples")
    p.add_argument("--rate", type=float, default=1.0,
                   help="surface shear strain rate in 1/s (default 1)")
    p.add_argument("--sigma", type=float, default=0.0,
                   help="multiplicative Gaussian torque noise level "
                        "(default 0)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shear-modulus-gpa", type=float, default=80.0)
    p.add_argument("--amplitude-mpa", type=float, default=500.0)
    p.add_argument("--exponent", type=float, default=0.2)
    p.add_argument("--radius-mm", type=float, default=5.0)
    p.add_argument("--length-mm", type=float, default=25.0)
    p.set_defaults(func=_run_synth)

    p = sub.add_parser("coeffs",
                       help="print Savitzky-Golay convolution weights")
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--deriv", type=int, default=0)
    p.set_defaults(func=_run_coeffs)

    return parser


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    argv = list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 4
    except InvalidSpecError as exc:
        # invalid flag-derived specification is a usage problem
        print(f"usage error: {exc}", file=sys.stderr)
        return 4
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except TorsmoothError as exc:
        # computation failure: the module's message, verbatim
        print(str(exc), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
