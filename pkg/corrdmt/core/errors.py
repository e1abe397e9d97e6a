"""Exception hierarchy shared by the engine, the I/O edges and the CLI.

The CLI maps each family to an exit code:
- InvalidParameterError (and ConfigFileError): 2
- NumericalFailureError, InsufficientSamplesError: 3
- OSError raised while writing output: 4
"""


class CorrDmtError(Exception):
    """Base class for all toolkit errors."""


class InvalidParameterError(CorrDmtError, ValueError):
    """An input violates a documented precondition."""


class ConfigFileError(InvalidParameterError):
    """A sweep config file or correlation file could not be parsed."""


class NumericalFailureError(CorrDmtError, ArithmeticError):
    """A computation cannot produce a trustworthy number."""


class DegenerateSpectrumError(NumericalFailureError):
    """Eigenvalues are too close for the partial-fraction expansion."""


class PoleEvaluationError(NumericalFailureError):
    """A transform was evaluated at (or within tolerance of) one of its poles."""


class InsufficientSamplesError(CorrDmtError):
    """A Monte Carlo estimate observed no outage events where it needs some."""
