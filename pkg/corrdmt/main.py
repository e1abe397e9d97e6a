"""Command-line entry point for the corr-dmt toolkit.

This module provides:
- Logging and tracing setup from Settings
- Subcommand registration (bound, diversity, simulate)
- Mapping of error families to exit codes
"""

import argparse
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from .commands import bound, diversity, simulate
from .commands.common import resolve_args
from .config import get_settings
from .core.errors import InsufficientSamplesError, InvalidParameterError, NumericalFailureError
from .infrastructure.emit import emit_to
from .infrastructure.tracing import configure_tracing, get_tracer, shutdown_tracing

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_NUMERICAL_FAILURE = 3
EXIT_IO_FAILURE = 4

logger = logging.getLogger(__name__)


def create_parser() -> argparse.ArgumentParser:
    """Create the argument parser with all subcommands registered.

    Returns:
        Configured ArgumentParser instance
    """
    parser = argparse.ArgumentParser(
        prog="corr-dmt",
        description="Finite-SNR diversity-multiplexing tradeoff of correlated MIMO Rayleigh channels",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    bound.register(subparsers)
    diversity.register(subparsers)
    simulate.register(subparsers)
    return parser


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    # Suppress noisy exporter logs
    logging.getLogger("opentelemetry").setLevel(logging.WARNING)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run the subcommand and emit its records.

    Returns:
        Exit status: 0 success, 2 invalid input, 3 numerical or statistical
        failure, 4 output I/O failure
    """
    settings = get_settings()
    _configure_logging(settings.log_level)
    args = create_parser().parse_args(argv)

    configure_tracing(settings.tracing_backend, otlp_endpoint=settings.local_otlp_endpoint)
    tracer = get_tracer(__name__)
    try:
        with tracer.start_as_current_span(f"command.{args.command}"):
            logger.info(f"Starting '{args.command}'")
            resolve_args(args, settings)
            records = args.handler(args, settings)
            emit_to(records, args.format, args.out, sys.stdout)
            logger.info(f"Finished '{args.command}': {len(records)} record(s)")
    except (InvalidParameterError, ValidationError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_INVALID_INPUT
    except (NumericalFailureError, InsufficientSamplesError) as e:
        logger.error(f"Computation failed: {e}")
        return EXIT_NUMERICAL_FAILURE
    except OSError as e:
        logger.error(f"Cannot write output: {e}")
        return EXIT_IO_FAILURE
    finally:
        shutdown_tracing()
    return EXIT_OK


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())
