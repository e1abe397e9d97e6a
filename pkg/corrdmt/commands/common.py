"""Flags shared by every subcommand and their resolution into a SweepSpec.

Precedence: command-line flag > --config file value > Settings default.
"""

import argparse
import logging
from pathlib import Path
from typing import Iterable, Optional

from ..config import Settings
from ..core.errors import ConfigFileError, InvalidParameterError
from ..infrastructure.config_file import load_config_file
from ..schemas.channel import AntennaConfig
from ..schemas.montecarlo import McConfig
from ..schemas.sweep import Quantity, SweepSpec
from ..utils.grid import parse_values

logger = logging.getLogger(__name__)

DEFAULT_ANTENNAS = 2

# dest names a config file may set
CONFIG_KEYS = {
    "nt",
    "nr",
    "rho",
    "corr_file",
    "r",
    "r_grid",
    "eta_db",
    "eta_grid_db",
    "out",
    "format",
    "seed",
    "samples",
    "threads",
    "streams",
    "rel_step",
}

# a flag also replaces the file value of its mutually exclusive partner
EXCLUSIVE_PARTNERS = {
    "rho": "corr_file",
    "corr_file": "rho",
    "r": "r_grid",
    "r_grid": "r",
    "eta_db": "eta_grid_db",
    "eta_grid_db": "eta_db",
}


def add_common_args(parser: argparse.ArgumentParser) -> None:
    """Register the shared flags (all default to None so config files can fill them)."""
    parser.add_argument("--config", type=Path, help="YAML file with flag values (flags take precedence)")
    parser.add_argument("--nt", type=int, help="Transmit antennas (default 2)")
    parser.add_argument("--nr", type=int, help="Receive antennas (default 2)")

    corr = parser.add_mutually_exclusive_group()
    corr.add_argument("--rho", help="Correlation coefficient(s) in [0, 1), comma-separated")
    corr.add_argument("--corr-file", type=Path, help="Explicit transmit correlation matrix file")

    rate = parser.add_mutually_exclusive_group()
    rate.add_argument("--r", help="Multiplexing gain(s), comma-separated")
    rate.add_argument("--r-grid", help="Multiplexing gain grid start:stop:step")

    snr = parser.add_mutually_exclusive_group()
    snr.add_argument("--eta-db", help="Mean SNR value(s) in dB, comma-separated")
    snr.add_argument("--eta-grid-db", help="Mean SNR grid in dB start:stop:step")

    parser.add_argument("--out", type=Path, help="Output file (default stdout)")
    parser.add_argument("--format", choices=["csv", "json-lines"], help="Output format")
    parser.add_argument("--seed", type=int, help="Monte Carlo seed")
    parser.add_argument("--samples", type=int, help="Monte Carlo samples per point")
    parser.add_argument("--streams", type=int, help="Independent Monte Carlo streams")
    parser.add_argument("--threads", type=int, help="Worker threads for grid points")
    parser.add_argument("--rel-step", type=float, help="Relative step for finite-difference diversity")


def _apply_config(args: argparse.Namespace) -> None:
    if args.config is None:
        return
    from_flags = {key for key in CONFIG_KEYS if getattr(args, key, None) is not None}
    for key, value in load_config_file(args.config, CONFIG_KEYS).items():
        if EXCLUSIVE_PARTNERS.get(key) in from_flags:
            logger.debug(f"Ignoring '{key}' from '{args.config}': overridden by --{EXCLUSIVE_PARTNERS[key].replace('_', '-')}")
            continue
        # unquoted YAML 1.1 reads 10:40:5 as a base-60 integer
        if key in ("r_grid", "eta_grid_db") and not isinstance(value, str):
            raise ConfigFileError(f"'{key}' in '{args.config}' must be a quoted 'start:stop:step' string")
        if getattr(args, key, None) is None:
            if key in ("out", "corr_file"):
                value = Path(value)
            setattr(args, key, value)


def _pick(primary: Optional[object], alternative: Optional[object], flags: str) -> list[float]:
    if primary is not None and alternative is not None:
        raise InvalidParameterError(f"give either {flags}, not both")
    chosen = primary if primary is not None else alternative
    return [] if chosen is None else parse_values(chosen)


def resolve_args(args: argparse.Namespace, settings: Settings) -> argparse.Namespace:
    """Fill unset flags from the config file, then from Settings."""
    _apply_config(args)
    if args.rho is not None and args.corr_file is not None:
        raise InvalidParameterError("give either --rho or --corr-file, not both")
    defaults = {
        "nt": DEFAULT_ANTENNAS,
        "nr": DEFAULT_ANTENNAS,
        "format": settings.output_format,
        "seed": settings.default_seed,
        "samples": settings.default_samples,
        "streams": settings.mc_stream_count,
        "threads": settings.default_threads,
        "rel_step": settings.fd_rel_step,
    }
    for key, value in defaults.items():
        if getattr(args, key) is None:
            setattr(args, key, value)
    if args.format not in ("csv", "json-lines"):
        raise InvalidParameterError(f"Unknown output format: '{args.format}'")
    return args


def build_spec(
    args: argparse.Namespace,
    settings: Settings,
    quantities: Iterable[Quantity],
) -> SweepSpec:
    """SweepSpec from resolved flags.

    Raises:
        InvalidParameterError: On malformed lists or grids
        pydantic.ValidationError: On values outside their domains
    """
    quantities = list(quantities)
    needs_mc = any(q in ("mc-outage", "div-fd") for q in quantities)
    mc = (
        McConfig(
            n_samples=args.samples,
            seed=args.seed,
            stream_count=args.streams,
            batch_size=settings.mc_batch_size,
        )
        if needs_mc
        else None
    )
    spec = SweepSpec(
        antennas=AntennaConfig(n_t=args.nt, n_r=args.nr),
        rho_values=[] if args.rho is None else parse_values(args.rho),
        corr_file=args.corr_file,
        r_values=_pick(args.r, args.r_grid, "--r or --r-grid"),
        eta_db_values=_pick(args.eta_db, args.eta_grid_db, "--eta-db or --eta-grid-db"),
        quantities=quantities,
        mc=mc,
        rel_step=args.rel_step,
        threads=args.threads,
    )
    logger.debug(f"Sweep spec: {spec.model_dump_json()}")
    return spec
