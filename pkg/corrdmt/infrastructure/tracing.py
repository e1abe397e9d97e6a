"""OpenTelemetry tracing configuration for the toolkit.

Supports two backends:
- console: Writes finished spans to stderr (stdout carries the records)
- local: Sends traces to a local collector via OTLP gRPC
"""

import logging
import sys

from opentelemetry import trace

logger = logging.getLogger(__name__)

SERVICE_NAME = "corr-dmt"


def configure_tracing(backend: str, otlp_endpoint: str = "http://localhost:4317") -> None:
    """Configure OpenTelemetry tracing based on backend selection.

    Args:
        backend: Tracing backend - "disabled", "console", or "local"
        otlp_endpoint: OTLP endpoint for local backend (default: http://localhost:4317)
    """
    if backend == "disabled":
        logger.debug("Tracing is disabled")
        return

    if backend == "console":
        _configure_console_tracing()
    elif backend == "local":
        _configure_local_tracing(otlp_endpoint)
    else:
        logger.warning(f"Unknown tracing backend: {backend}, tracing disabled")


def _provider():
    from opentelemetry.sdk.resources import Resource
    from opentelemetry.sdk.trace import TracerProvider

    return TracerProvider(resource=Resource.create({"service.name": SERVICE_NAME}))


def _configure_console_tracing() -> None:
    from opentelemetry.sdk.trace.export import ConsoleSpanExporter, SimpleSpanProcessor

    provider = _provider()
    provider.add_span_processor(SimpleSpanProcessor(ConsoleSpanExporter(out=sys.stderr)))
    trace.set_tracer_provider(provider)
    logger.info("Tracing configured for console output")


def _configure_local_tracing(otlp_endpoint: str) -> None:
    """Configure tracing for a local collector via OTLP gRPC."""
    from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter
    from opentelemetry.sdk.trace.export import BatchSpanProcessor

    provider = _provider()
    provider.add_span_processor(BatchSpanProcessor(OTLPSpanExporter(endpoint=otlp_endpoint)))
    trace.set_tracer_provider(provider)
    logger.info(f"Tracing configured for local collector at {otlp_endpoint}")


def shutdown_tracing() -> None:
    """Flush and stop the SDK provider, if one was installed."""
    provider = trace.get_tracer_provider()
    shutdown = getattr(provider, "shutdown", None)
    if callable(shutdown):
        shutdown()


def get_tracer(name: str) -> trace.Tracer:
    return trace.get_tracer(name)
