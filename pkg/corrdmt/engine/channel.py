"""Spatial correlation matrices, eigen-spectra and Kronecker-model channel sampling."""

import logging

import numpy as np

from ..core.errors import InvalidParameterError, NumericalFailureError
from ..schemas.channel import AntennaConfig, ChannelMatrix, CorrelationMatrix, EigenSpectrum

logger = logging.getLogger(__name__)

# Eigenvalues below -NEGATIVE_EIG_TOL * dim are a numerical failure; above it they are clipped to 0
NEGATIVE_EIG_TOL = 1e-10


def identity_correlation(dim: int) -> CorrelationMatrix:
    """Uncorrelated (identity) correlation matrix of the given dimension."""
    if dim < 1:
        raise InvalidParameterError(f"dimension must be >= 1, got {dim}")
    return CorrelationMatrix(np.eye(dim, dtype=complex))


def build_single_coeff_correlation(rho: float, dim: int) -> CorrelationMatrix:
    """Build the single-coefficient model with entry (i, j) = rho^((i-j)^2).

    Args:
        rho: Correlation coefficient in [0, 1)
        dim: Number of antennas on the correlated side

    Returns:
        Hermitian, unit-diagonal CorrelationMatrix

    Raises:
        InvalidParameterError: If rho is outside [0, 1) or dim < 1
    """
    if not (np.isfinite(rho) and 0.0 <= rho < 1.0):
        raise InvalidParameterError(
            f"rho must lie in [0, 1), got {rho}; rho = 1 makes the correlation "
            "matrix rank-deficient and the bounds require full rank"
        )
    if dim < 1:
        raise InvalidParameterError(f"dimension must be >= 1, got {dim}")
    idx = np.arange(dim)
    lag_sq = (idx[:, None] - idx[None, :]) ** 2
    return CorrelationMatrix(np.power(float(rho), lag_sq).astype(complex))


def _as_correlation(corr: CorrelationMatrix | np.ndarray) -> CorrelationMatrix:
    if isinstance(corr, CorrelationMatrix):
        return corr
    return CorrelationMatrix(np.asarray(corr))


def _hermitian_eigh(corr: CorrelationMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvectors with tolerance checks on negatives."""
    values, vectors = np.linalg.eigh(corr.entries)
    floor = -NEGATIVE_EIG_TOL * corr.dim
    if values[0] < floor:
        raise NumericalFailureError(
            f"correlation matrix is not positive semidefinite: smallest eigenvalue {values[0]:.3e}"
        )
    if values[0] < 0.0:
        logger.warning(f"Clipping eigenvalue {values[0]:.3e} to 0")
        values = np.clip(values, 0.0, None)
    return values, vectors


def eigen_spectrum(corr: CorrelationMatrix | np.ndarray) -> EigenSpectrum:
    """Descending eigenvalues D_k^2 of a Hermitian PSD correlation matrix.

    Args:
        corr: CorrelationMatrix (a raw array is validated first)

    Returns:
        EigenSpectrum whose entries sum to the dimension

    Raises:
        InvalidParameterError: If the input is not a valid correlation matrix
        NumericalFailureError: If an eigenvalue is negative beyond tolerance
    """
    corr = _as_correlation(corr)
    values, _ = _hermitian_eigh(corr)
    return EigenSpectrum(d_sq=tuple(float(v) for v in values[::-1]))


def matrix_sqrt(corr: CorrelationMatrix) -> np.ndarray:
    """Hermitian square root U diag(sqrt(lambda)) U^H."""
    values, vectors = _hermitian_eigh(corr)
    return (vectors * np.sqrt(values)) @ vectors.conj().T


def _check_dims(cfg: AntennaConfig, r_t: CorrelationMatrix, r_r: CorrelationMatrix) -> None:
    if r_t.dim != cfg.n_t:
        raise InvalidParameterError(f"transmit correlation is {r_t.dim}x{r_t.dim}, expected n_t = {cfg.n_t}")
    if r_r.dim != cfg.n_r:
        raise InvalidParameterError(f"receive correlation is {r_r.dim}x{r_r.dim}, expected n_r = {cfg.n_r}")


def _is_identity(corr: CorrelationMatrix) -> bool:
    return bool(np.array_equal(corr.entries, np.eye(corr.dim)))


def sample_channels(
    cfg: AntennaConfig,
    r_t: CorrelationMatrix,
    r_r: CorrelationMatrix,
    rng: np.random.Generator,
    size: int,
) -> np.ndarray:
    """Draw `size` channel matrices H = R_r^{1/2} H_w R_t^{1/2}.

    H_w has i.i.d. circularly-symmetric CN(0, 1) entries. The real parts of the
    whole batch are drawn before the imaginary parts, so a seeded generator
    gives the same batch on every run.

    Returns:
        Complex array of shape (size, n_r, n_t)
    """
    _check_dims(cfg, r_t, r_r)
    shape = (size, cfg.n_r, cfg.n_t)
    h = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    if not _is_identity(r_t):
        h = h @ matrix_sqrt(r_t)
    if not _is_identity(r_r):
        h = matrix_sqrt(r_r) @ h
    return h


def sample_channel(
    cfg: AntennaConfig,
    r_t: CorrelationMatrix,
    r_r: CorrelationMatrix,
    rng: np.random.Generator,
) -> ChannelMatrix:
    """Draw one correlated Rayleigh channel realization.

    Raises:
        InvalidParameterError: If the correlation dimensions do not match cfg
    """
    return ChannelMatrix(sample_channels(cfg, r_t, r_r, rng, size=1)[0])
