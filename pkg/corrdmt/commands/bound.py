"""`bound` subcommand: optimized outage lower bounds over the sweep grid."""

import argparse

from ..config import Settings
from ..schemas.sweep import CurveRecord
from ..utils.sweep import run_sweep
from .common import add_common_args, build_spec


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "bound",
        help="Optimized outage-probability lower bounds",
        description="Maximize the outage lower bound over the rate split at each (rho, r, eta) point. "
        "Uncorrelated sources report bound-uncorr, correlated ones bound-corr.",
    )
    add_common_args(parser)
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace, settings: Settings) -> list[CurveRecord]:
    spec = build_spec(args, settings, ["bound-corr"])
    return run_sweep(spec)
