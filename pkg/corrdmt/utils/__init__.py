"""Utility functions for grids and sweeps."""

from .grid import db_to_linear, make_grid, parse_grid, parse_list, parse_values
from .sweep import run_sweep

__all__ = [
    "db_to_linear",
    "make_grid",
    "parse_grid",
    "parse_list",
    "parse_values",
    "run_sweep",
]
