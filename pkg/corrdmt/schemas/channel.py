"""Antenna, correlation and channel types."""

from dataclasses import dataclass, field

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..core.errors import InvalidParameterError

# Tolerance for Hermitian symmetry, unit diagonal and trace checks
MATRIX_TOL = 1e-9


class AntennaConfig(BaseModel):
    """Transmit/receive antenna counts of the multielement link."""

    model_config = ConfigDict(frozen=True)

    n_t: int = Field(..., ge=1, description="Number of transmit antennas")
    n_r: int = Field(..., ge=1, description="Number of receive antennas")

    @property
    def t(self) -> int:
        """Number of spatial branches, min(n_t, n_r)."""
        return min(self.n_t, self.n_r)

    @property
    def g(self) -> int:
        """Array gain used in the rate normalization (equals n_r)."""
        return self.n_r

    def branch_shape(self, l: int) -> int:
        """Total Gamma shape n_r + n_t - 2l + 1 of branch l (1-based)."""
        return self.n_r + self.n_t - 2 * l + 1


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """Hermitian PSD spatial correlation matrix with unit diagonal."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        entries = np.asarray(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] < 1:
            raise InvalidParameterError(
                f"Correlation matrix must be square and non-empty, got shape {entries.shape}"
            )
        if not np.all(np.isfinite(entries)):
            raise InvalidParameterError("Correlation matrix has non-finite entries")
        if not np.allclose(entries, entries.conj().T, atol=MATRIX_TOL, rtol=0.0):
            raise InvalidParameterError("Correlation matrix is not Hermitian")
        if not np.allclose(np.diag(entries), 1.0, atol=MATRIX_TOL, rtol=0.0):
            raise InvalidParameterError(
                "Correlation matrix must have unit diagonal (trace equal to its dimension)"
            )
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class EigenSpectrum:
    """Descending eigenvalues D_k^2 of the transmit correlation matrix."""

    d_sq: tuple[float, ...]

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.d_sq)
        if not values:
            raise InvalidParameterError("Eigen spectrum is empty")
        if any(v < 0.0 or not np.isfinite(v) for v in values):
            raise InvalidParameterError(f"Eigen spectrum has negative or non-finite entries: {values}")
        if any(a < b for a, b in zip(values, values[1:])):
            raise InvalidParameterError(f"Eigen spectrum must be sorted descending: {values}")
        if abs(sum(values) - len(values)) > MATRIX_TOL * len(values) * 10:
            raise InvalidParameterError(
                f"Eigen spectrum must sum to its length {len(values)}, got {sum(values)}"
            )
        object.__setattr__(self, "d_sq", values)

    @classmethod
    def uncorrelated(cls, n_t: int) -> "EigenSpectrum":
        return cls(d_sq=(1.0,) * n_t)

    @property
    def n_t(self) -> int:
        return len(self.d_sq)

    @property
    def is_uncorrelated(self) -> bool:
        """True when every D_k^2 equals 1 (identity correlation)."""
        return all(abs(v - 1.0) <= 1e-12 for v in self.d_sq)

    @property
    def is_full_rank(self) -> bool:
        return self.d_sq[-1] > 1e-12


@dataclass(frozen=True, eq=False)
class ChannelMatrix:
    """One n_r x n_t channel realization H = R_r^{1/2} H_w R_t^{1/2}."""

    entries: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        entries = np.asarray(self.entries, dtype=complex)
        if entries.ndim != 2:
            raise InvalidParameterError(f"Channel matrix must be 2-D, got shape {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise InvalidParameterError("Channel matrix has non-finite entries")
        object.__setattr__(self, "entries", entries)

    @property
    def n_r(self) -> int:
        return self.entries.shape[0]

    @property
    def n_t(self) -> int:
        return self.entries.shape[1]
