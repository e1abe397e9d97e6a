"""Grid construction for sweeps and dB conversion."""

import math

from ..core.errors import InvalidParameterError

# Inclusive-stop slack, relative to step
GRID_SLACK = 1e-9


def db_to_linear(db: float) -> float:
    """10^(dB/10)."""
    return 10.0 ** (db / 10.0)


def make_grid(start: float, stop: float, step: float) -> list[float]:
    """Points start + k*step, k = 0, 1, ..., with stop included within slack.

    Raises:
        InvalidParameterError: If step <= 0 or stop < start
    """
    if not step > 0.0:
        raise InvalidParameterError(f"grid step must be > 0, got {step}")
    if stop < start:
        raise InvalidParameterError(f"grid stop {stop} is below start {start}")
    count = math.floor((stop - start) / step + GRID_SLACK) + 1
    # rounded so 0.1:1.9:0.1 yields 0.3, not 0.30000000000000004
    return [min(round(start + k * step, 12), stop) for k in range(count)]


def parse_grid(text: str) -> list[float]:
    """Parse 'start:stop:step' into its points."""
    parts = text.split(":")
    if len(parts) != 3:
        raise InvalidParameterError(f"grid must be 'start:stop:step', got '{text}'")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as e:
        raise InvalidParameterError(f"grid '{text}' has a non-numeric part") from e
    return make_grid(start, stop, step)


def parse_list(text: str) -> list[float]:
    """Parse a comma-separated list of numbers ('0,0.5,0.9')."""
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError as e:
        raise InvalidParameterError(f"expected comma-separated numbers, got '{text}'") from e


def parse_values(value: object) -> list[float]:
    """Grid, list or scalar (strings from flags, numbers or lists from YAML)."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return [float(value)]
    if isinstance(value, (list, tuple)):
        try:
            return [float(v) for v in value]
        except (TypeError, ValueError) as e:
            raise InvalidParameterError(f"expected a list of numbers, got {value!r}") from e
    text = str(value).strip()
    if ":" in text:
        return parse_grid(text)
    return parse_list(text)
