"""Infrastructure layer: record emission, input files and tracing."""

from .config_file import load_config_file
from .corr_file import parse_correlation, read_correlation_file
from .emit import OutputFormat, emit, emit_to, read_records, write_records
from .tracing import configure_tracing, get_tracer, shutdown_tracing

__all__ = [
    "OutputFormat",
    "configure_tracing",
    "emit",
    "emit_to",
    "get_tracer",
    "load_config_file",
    "parse_correlation",
    "read_correlation_file",
    "read_records",
    "shutdown_tracing",
    "write_records",
]
