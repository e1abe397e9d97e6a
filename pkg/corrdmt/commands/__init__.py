"""CLI subcommands; each module exposes register(subparsers)."""

from . import bound, diversity, simulate

__all__ = ["bound", "diversity", "simulate"]
