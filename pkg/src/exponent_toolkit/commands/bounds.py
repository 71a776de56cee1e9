"""Bound commands: bounds, hurewicz, equivariant, witnesses."""

import argparse
import logging

from exponent_toolkit.bounds import (
    arlettaz_bound,
    bounds_row,
    equivariant_bound,
    equivariant_lcm_bound,
    hurewicz_bounds_from_cert,
    truncation_certificate,
)
from exponent_toolkit.charts import emit, read_group_data
from exponent_toolkit.witnesses import consistency_sweep, witness_table

logger = logging.getLogger(__name__)


def _exponent_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.replace(",", " ").split()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(
            f"expected exponents like 1,1,3: {text}"
        ) from e
    if any(v < 0 for v in values):
        raise argparse.ArgumentTypeError("exponents must be nonnegative")
    return values


def format_bounds_table(p: int, degrees: range) -> str:
    rows = [(n, bounds_row(p, n)) for n in degrees]
    headers = ["n", *rows[0][1]] if rows else ["n"]
    widths = [max(len(h), 5) for h in headers]
    lines = ["  ".join(h.rjust(w) for h, w in zip(headers, widths, strict=True))]
    for n, row in rows:
        cells = [str(n), *(str(v) for v in row.values())]
        lines.append("  ".join(c.rjust(w) for c, w in zip(cells, widths, strict=True)))
    return "\n".join(lines) + "\n"


def cmd_bounds(args: argparse.Namespace) -> int:
    """Print the closed-form bounds at one ``n``, or a table up to ``--table``."""
    if args.table is not None:
        if args.table < 1:
            raise ValueError(f"--table {args.table} must be at least 1")
        degrees = range(1, args.table + 1)
    elif args.n is not None:
        if args.n < 1:
            raise ValueError(f"n={args.n} must be at least 1")
        degrees = range(args.n, args.n + 1)
    else:
        raise ValueError("give --n or --table")
    emit(f"p = {args.prime}\n" + format_bounds_table(args.prime, degrees), args.out)
    return 0


def cmd_hurewicz(args: argparse.Namespace) -> int:
    """Print Hurewicz kernel and cokernel bounds, with the product-of-stems
    comparison when ``--rho`` is given."""
    p, n = args.prime, args.n
    if n < 1:
        raise ValueError(f"n={n} must be at least 1")
    kernel, cokernel = hurewicz_bounds_from_cert(
        truncation_certificate(p, n), truncation_certificate(p, n - 1)
    )
    print(f"Hurewicz at p={p}, n={n}")
    print(f"  kernel   <= p^{kernel.value}   ({kernel.provenance})")
    print(f"  cokernel <= p^{cokernel.value}   ({cokernel.provenance})")
    if args.rho is not None:
        rho_kernel = arlettaz_bound(p, args.rho, n, "kernel")
        rho_cokernel = arlettaz_bound(p, args.rho, n, "cokernel")
        print(f"  stem-product kernel   <= p^{rho_kernel.value}")
        print(f"  stem-product cokernel <= p^{rho_cokernel.value}")
    return 0


def cmd_equivariant(args: argparse.Namespace) -> int:
    """Print the equivariant p-exponent bound and its integer (lcm) form."""
    data = read_group_data(args.group_file)
    cert = equivariant_bound(data, args.n, args.prime)
    print(cert)
    print(f"p-exponent: {cert.value}")
    print(f"integer bound: {equivariant_lcm_bound(data, args.n)}")
    return 0


def cmd_witnesses(args: argparse.Namespace) -> int:
    """Print the witness table and run the consistency sweep.

    Returns:
        0 if the sweep finds no violation, 1 otherwise.
    """
    p, n_max = args.prime, args.n
    report = consistency_sweep(p, n_max)
    print(f"witnesses at p={p}, n <= {n_max}")
    for record in witness_table(p, n_max):
        print(
            f"  {record.space:>8}  n={record.n:<4} lower {record.lower:<3}"
            f" K-order p^{record.k_theory_exponent}  [{record.citation}]"
        )
    for v in report.violations:
        print(f"  VIOLATION at n={v.n}: lower {v.lower}, upper {v.upper} ({v.reason})")
    print(f"{report.checked} witnesses, {len(report.violations)} violation(s)")
    return 0 if report.consistent else 1


def add_bound_commands(
    subparsers: "argparse._SubParsersAction[argparse.ArgumentParser]",
) -> None:
    """Register the bound-family subcommands."""
    bounds = subparsers.add_parser("bounds", help="closed-form exponent bounds")
    bounds.add_argument("--prime", type=int, default=2)
    bounds.add_argument("--n", type=int, default=None)
    bounds.add_argument("--table", type=int, default=None, metavar="N_MAX")
    bounds.add_argument("--out", default=None)
    bounds.set_defaults(func=cmd_bounds)

    hurewicz = subparsers.add_parser("hurewicz", help="Hurewicz kernel and cokernel")
    hurewicz.add_argument("--prime", type=int, default=2)
    hurewicz.add_argument("--n", type=int, required=True)
    hurewicz.add_argument(
        "--rho", type=_exponent_list, default=None, help="stem exponents, e.g. 1,1,3"
    )
    hurewicz.set_defaults(func=cmd_hurewicz)

    equivariant = subparsers.add_parser(
        "equivariant", help="equivariant bound from subgroup data"
    )
    equivariant.add_argument("--group-file", required=True)
    equivariant.add_argument("--prime", type=int, default=2)
    equivariant.add_argument("--n", type=int, required=True)
    equivariant.set_defaults(func=cmd_equivariant)

    witnesses = subparsers.add_parser("witnesses", help="lower-bound witnesses")
    witnesses.add_argument("--prime", type=int, default=2)
    witnesses.add_argument("--n", type=int, required=True, metavar="N_MAX")
    witnesses.set_defaults(func=cmd_witnesses)
