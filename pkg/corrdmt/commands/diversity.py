"""`diversity` subcommand: finite-SNR estimates, maximum diversity, asymptote and relative gain."""

import argparse

from ..config import Settings
from ..schemas.sweep import CurveRecord, Quantity
from ..utils.sweep import run_sweep
from .common import add_common_args, build_spec


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "diversity",
        help="Diversity estimates and tradeoff curves",
        description="Without a mode flag, evaluate the diversity estimate at the optimized rate split.",
    )
    add_common_args(parser)
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--dmax", action="store_true", help="Maximum diversity (r -> 0) per SNR")
    mode.add_argument("--asymptote", action="store_true", help="High-SNR tradeoff per r")
    mode.add_argument(
        "--relative-gain", action="store_true", help="Correlated over uncorrelated estimate ratio"
    )
    parser.add_argument(
        "--exact", action="store_true", help="Add Monte Carlo finite-difference diversity records"
    )
    parser.set_defaults(handler=handle)


def quantities_for(args: argparse.Namespace) -> list[Quantity]:
    if args.dmax:
        quantities: list[Quantity] = ["d-max"]
    elif args.asymptote:
        quantities = ["d-asym"]
    elif args.relative_gain:
        quantities = ["relative-gain"]
    else:
        quantities = ["div-est-corr"]
    if args.exact:
        quantities.append("div-fd")
    return quantities


def handle(args: argparse.Namespace, settings: Settings) -> list[CurveRecord]:
    spec = build_spec(args, settings, quantities_for(args))
    return run_sweep(spec)
