"""YAML sweep config files: a flat mapping whose keys mirror the CLI flag names."""

import logging
from pathlib import Path
from typing import Any, Iterable

import yaml

from ..core.errors import ConfigFileError

logger = logging.getLogger(__name__)


def load_config_file(path: Path, allowed_keys: Iterable[str]) -> dict[str, Any]:
    """Load a flat YAML mapping; keys may use dashes or underscores.

    Args:
        path: YAML file path
        allowed_keys: Accepted keys (argparse dest names)

    Returns:
        Mapping of dest name to value

    Raises:
        ConfigFileError: On unreadable files, invalid YAML, nested values or unknown keys
    """
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigFileError(f"Cannot read config file '{path}': {e}") from e
    except yaml.YAMLError as e:
        raise ConfigFileError(f"Invalid YAML in '{path}': {e}") from e

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigFileError(f"Config file '{path}' must contain a mapping, got {type(data).__name__}")

    allowed = set(allowed_keys)
    values: dict[str, Any] = {}
    for key, value in data.items():
        dest = str(key).replace("-", "_")
        if dest not in allowed:
            raise ConfigFileError(f"Unknown key '{key}' in config file '{path}'")
        if isinstance(value, dict):
            raise ConfigFileError(f"Key '{key}' in '{path}' must not be nested")
        values[dest] = value
    logger.debug(f"Loaded {len(values)} settings from {path}")
    return values
