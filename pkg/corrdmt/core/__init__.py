"""Core building blocks and cross-cutting concerns."""

from .errors import (
    ConfigFileError,
    CorrDmtError,
    DegenerateSpectrumError,
    InsufficientSamplesError,
    InvalidParameterError,
    NumericalFailureError,
    PoleEvaluationError,
)

__all__ = [
    "ConfigFileError",
    "CorrDmtError",
    "DegenerateSpectrumError",
    "InsufficientSamplesError",
    "InvalidParameterError",
    "NumericalFailureError",
    "PoleEvaluationError",
]
