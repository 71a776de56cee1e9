"""Chart commands: ext, verify-vanishing, verify-dimshift, render-svg."""

import argparse
import logging

from exponent_toolkit.charts import emit, format_chart, read_chart, render_chart_svg
from exponent_toolkit.config import BUILTIN_MODULES, DEFAULT_WINDOWS
from exponent_toolkit.resolution import (
    compute_chart,
    verify_dimension_shift,
    verify_vanishing_region,
)

logger = logging.getLogger(__name__)


def _window(
    args: argparse.Namespace, max_stem: int | None = None
) -> tuple[int, int]:
    default_s, default_t = DEFAULT_WINDOWS.get(args.prime, DEFAULT_WINDOWS[3])
    max_s = default_s if args.max_s is None else args.max_s
    max_t = default_t if args.max_t is None else args.max_t
    if max_stem is not None:
        if max_stem < 1:
            raise ValueError(f"max_stem={max_stem} must be positive")
        max_t = max_s + max_stem
    if max_s < 1 or max_t < 1:
        raise ValueError(f"window (max_s={max_s}, max_t={max_t}) must be positive")
    return max_s, max_t


def cmd_ext(args: argparse.Namespace) -> int:
    """Compute an Ext chart and write it as a chart file.

    Args:
        args: Parsed ``ext`` arguments.

    Returns:
        Exit status 0.
    """
    max_s, max_t = _window(args)
    chart = compute_chart(
        args.module,
        args.prime,
        max_s,
        max_t,
        threads=args.threads,
        order_seed=args.order_seed,
    )
    emit(format_chart(chart), args.out)
    return 0


def cmd_verify_vanishing(args: argparse.Namespace) -> int:
    """Check that the sphere's chart vanishes in the vanishing region.

    With ``--max-stem`` the window is ``t <= max_s + max_stem`` and only
    bidegrees with ``t - s <= max_stem`` are checked.

    Returns:
        0 if the region is empty, 1 otherwise.
    """
    max_s, max_t = _window(args, args.max_stem)
    chart = compute_chart("sphere", args.prime, max_s, max_t, threads=args.threads)
    violations = verify_vanishing_region(chart, args.max_stem)
    print(f"vanishing region at p={args.prime}, s <= {max_s}, t <= {max_t}: ", end="")
    if not violations:
        print("empty")
        return 0
    print(f"{len(violations)} nonzero bidegree(s)")
    for s, t in violations:
        print(f"  (s, t) = ({s}, {t})  dim {chart.dim(s, t)}")
    logger.error("Vanishing region not empty at p=%d", args.prime)
    return 1


def cmd_verify_dimshift(args: argparse.Namespace) -> int:
    """Compare the tau1 chart with the shifted sphere chart.

    Returns:
        0 if every checked bidegree agrees, 1 otherwise.
    """
    max_s, max_t = _window(args)
    lift = max(args.shift, 0)
    sphere = compute_chart(
        "sphere", args.prime, max_s + lift, max_t + lift, threads=args.threads
    )
    tau1 = compute_chart("tau1", args.prime, max_s, max_t, threads=args.threads)
    report = verify_dimension_shift(sphere, tau1, shift=args.shift)
    print(
        f"dimension shift {args.shift:+d} at p={args.prime}: "
        f"{report.checked} bidegrees checked, {len(report.violations)} violation(s)"
    )
    for v in report.violations:
        print(f"  (s, t) = ({v.s}, {v.t})  expected {v.expected}, found {v.actual}")
    return 0 if report.verified else 1


def cmd_render_svg(args: argparse.Namespace) -> int:
    """Render a chart file as SVG."""
    chart = read_chart(args.chart_file)
    emit(render_chart_svg(chart), args.out)
    return 0


def _add_window(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--prime", type=int, default=2)
    parser.add_argument("--max-s", type=int, default=None)
    parser.add_argument("--max-t", type=int, default=None)
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="worker threads (default: EXPONENT_TOOLKIT_THREADS or all cores)",
    )


def add_chart_commands(
    subparsers: "argparse._SubParsersAction[argparse.ArgumentParser]",
) -> None:
    """Register the chart-family subcommands."""
    ext = subparsers.add_parser("ext", help="compute an Ext chart")
    _add_window(ext)
    ext.add_argument("--module", choices=list(BUILTIN_MODULES), default="sphere")
    ext.add_argument("--order-seed", type=int, default=None, help=argparse.SUPPRESS)
    ext.add_argument("--out", default=None, help="chart file (default: stdout)")
    ext.set_defaults(func=cmd_ext)

    vanishing = subparsers.add_parser(
        "verify-vanishing", help="check the sphere's vanishing line"
    )
    _add_window(vanishing)
    vanishing.add_argument("--max-stem", type=int, default=None)
    vanishing.set_defaults(func=cmd_verify_vanishing)

    dimshift = subparsers.add_parser(
        "verify-dimshift", help="compare tau1 with the shifted sphere chart"
    )
    _add_window(dimshift)
    dimshift.add_argument("--shift", type=int, default=1)
    dimshift.set_defaults(func=cmd_verify_dimshift)

    render = subparsers.add_parser("render-svg", help="render a chart file as SVG")
    render.add_argument("chart_file")
    render.add_argument("--out", default=None, help="SVG file (default: stdout)")
    render.set_defaults(func=cmd_render_svg)
