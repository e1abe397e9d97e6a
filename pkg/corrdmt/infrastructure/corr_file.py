"""Reader for explicit correlation-matrix files.

Format: the first line holds the dimension n, followed by n rows of n
complex values written as `re+imj` (e.g. `1+0j 0.5-0.1j`).
"""

import logging
from pathlib import Path

import numpy as np

from ..core.errors import ConfigFileError
from ..schemas.channel import CorrelationMatrix

logger = logging.getLogger(__name__)


def parse_correlation(text: str, source: str = "<text>") -> CorrelationMatrix:
    """Parse correlation-file text into a validated CorrelationMatrix.

    Raises:
        ConfigFileError: If the text is malformed
        InvalidParameterError: If the matrix is not a valid correlation matrix
    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise ConfigFileError(f"Correlation file '{source}' is empty")
    try:
        dim = int(lines[0])
    except ValueError as e:
        raise ConfigFileError(f"First line of '{source}' must be the dimension, got '{lines[0]}'") from e
    if dim < 1:
        raise ConfigFileError(f"Dimension in '{source}' must be >= 1, got {dim}")

    rows = lines[1:]
    if len(rows) != dim:
        raise ConfigFileError(f"'{source}' declares dimension {dim} but has {len(rows)} rows")
    entries = np.empty((dim, dim), dtype=complex)
    for i, row in enumerate(rows):
        tokens = row.replace(",", " ").split()
        if len(tokens) != dim:
            raise ConfigFileError(f"Row {i + 1} of '{source}' has {len(tokens)} values, expected {dim}")
        try:
            entries[i] = [complex(tok) for tok in tokens]
        except ValueError as e:
            raise ConfigFileError(f"Row {i + 1} of '{source}': {e}") from e
    return CorrelationMatrix(entries)


def read_correlation_file(path: Path) -> CorrelationMatrix:
    """Read and validate a correlation-matrix file."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigFileError(f"Cannot read correlation file '{path}': {e}") from e
    corr = parse_correlation(text, source=str(path))
    logger.info(f"Loaded {corr.dim}x{corr.dim} correlation matrix from {path}")
    return corr
