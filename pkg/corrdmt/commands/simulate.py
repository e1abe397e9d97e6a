"""`simulate` subcommand: Monte Carlo outage probability and finite-difference diversity."""

import argparse

from ..config import Settings
from ..schemas.sweep import CurveRecord
from ..utils.sweep import run_sweep
from .common import add_common_args, build_spec


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "simulate",
        help="Monte Carlo outage probability and diversity",
        description="Sample correlated Rayleigh channels; records carry binomial standard errors.",
    )
    add_common_args(parser)
    parser.add_argument(
        "--quantity",
        choices=["mc-outage", "div-fd"],
        default="mc-outage",
        help="Empirical outage probability or its finite-difference diversity",
    )
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace, settings: Settings) -> list[CurveRecord]:
    return run_sweep(build_spec(args, settings, [args.quantity]))
