"""Outage-probability lower bounds and the rate-split optimizer.

I <= sum_l log2(1 + (eta/n_t) Delta_l), so splitting the target rate as
r = sum_l b_l gives P_out >= prod_l P(Delta_l <= xi_l) with
xi_l = (n_t/eta) ((1 + g eta)^b_l - 1). The split b is then chosen to
maximize the product.
"""

import itertools
import logging
import math
from typing import Optional

import numpy as np
from scipy import optimize, special

from ..core.errors import InvalidParameterError
from ..schemas.channel import AntennaConfig, EigenSpectrum
from ..schemas.outage import Allocation, OperatingPoint, OutageEstimate
from .quadform import GAMMA_INC_CUTOFF, branch_mixture, gamma_inc, mixture_cdf

logger = logging.getLogger(__name__)

# Coarse simplex grid resolution (step r / GRID_STEPS), shrunk when t is large
GRID_STEPS = 20
MAX_GRID_POINTS = 20_000
# Nelder-Mead tolerance on the (log) bound value
OPT_TOL = 1e-8
# Objective value standing in for log(0)
_LOG_ZERO_PENALTY = 1e300


def xi(b_l: float, op: OperatingPoint, cfg: AntennaConfig) -> float:
    """Branch threshold xi_l = (n_t/eta) ((1 + g eta)^b_l - 1)."""
    if not b_l >= 0.0:
        raise InvalidParameterError(f"b_l must be >= 0, got {b_l}")
    if b_l == 1.0:
        return float(cfg.n_t * cfg.g)
    return cfg.n_t / op.eta * math.expm1(b_l * math.log1p(cfg.g * op.eta))


def _xi_array(b: np.ndarray, op: OperatingPoint, cfg: AntennaConfig) -> np.ndarray:
    out = cfg.n_t / op.eta * np.expm1(b * math.log1p(cfg.g * op.eta))
    return np.where(b == 1.0, float(cfg.n_t * cfg.g), out)


def siso_outage(op: OperatingPoint) -> float:
    """Exact SISO Rayleigh outage 1 - exp(-((1 + eta)^r - 1)/eta)."""
    return -math.expm1(-xi(op.r, op, AntennaConfig(n_t=1, n_r=1)))


def _check_point(op: OperatingPoint, cfg: AntennaConfig, alloc: Optional[Allocation] = None) -> None:
    if op.r > cfg.t:
        raise InvalidParameterError(f"multiplexing gain {op.r} exceeds t = {cfg.t}")
    if alloc is not None:
        try:
            alloc.check_against(op.r, cfg.t)
        except ValueError as e:
            raise InvalidParameterError(str(e)) from e


def _check_spectrum(cfg: AntennaConfig, spectrum: EigenSpectrum) -> None:
    if spectrum.n_t != cfg.n_t:
        raise InvalidParameterError(f"spectrum has {spectrum.n_t} entries, expected n_t = {cfg.n_t}")
    if not spectrum.is_full_rank:
        raise InvalidParameterError("transmit correlation must have full rank")


def _branch_cdfs(
    xis: np.ndarray,
    cfg: AntennaConfig,
    spectrum: Optional[EigenSpectrum],
) -> np.ndarray:
    """P(Delta_l <= xi_l) for an (n, t) array of thresholds."""
    out = np.empty_like(xis)
    correlated = spectrum is not None and not spectrum.is_uncorrelated
    for l in range(1, cfg.t + 1):
        col = xis[:, l - 1]
        if correlated:
            out[:, l - 1] = mixture_cdf(branch_mixture(spectrum, l, cfg), col)
        else:
            shape = cfg.branch_shape(l)
            out[:, l - 1] = np.where(
                col > GAMMA_INC_CUTOFF, 1.0, special.gammainc(shape, np.minimum(col, GAMMA_INC_CUTOFF))
            )
    return out


def _log_bounds(
    b: np.ndarray,
    op: OperatingPoint,
    cfg: AntennaConfig,
    spectrum: Optional[EigenSpectrum],
) -> np.ndarray:
    cdfs = _branch_cdfs(_xi_array(np.atleast_2d(b), op, cfg), cfg, spectrum)
    with np.errstate(divide="ignore"):
        return np.sum(np.log(cdfs), axis=1)


def log_lower_bound(
    op: OperatingPoint,
    cfg: AntennaConfig,
    spectrum: Optional[EigenSpectrum],
    b: np.ndarray | tuple[float, ...],
) -> float:
    """Natural log of the applicable bound at allocation b (-inf when it is 0)."""
    return float(_log_bounds(np.asarray(b, dtype=float), op, cfg, spectrum)[0])


def lower_bound_uncorr(op: OperatingPoint, cfg: AntennaConfig, alloc: Allocation) -> float:
    """Uncorrelated bound prod_l gamma_inc(xi_l, n_r + n_t - 2l + 1).

    Raises:
        InvalidParameterError: If the allocation does not split op.r over t branches
    """
    _check_point(op, cfg, alloc)
    value = 1.0
    for l, b_l in enumerate(alloc.b, start=1):
        value *= gamma_inc(xi(b_l, op, cfg), cfg.branch_shape(l))
    return value


def lower_bound_corr(
    op: OperatingPoint,
    cfg: AntennaConfig,
    spectrum: EigenSpectrum,
    alloc: Allocation,
) -> float:
    """Correlated bound prod_l F_l(xi_l), F_l the Gamma-mixture cdf of Delta_l.

    The all-ones spectrum is routed to lower_bound_uncorr.

    Raises:
        InvalidParameterError: On invalid allocation or rank-deficient spectrum
        DegenerateSpectrumError: If the partial fractions are ill-conditioned
    """
    _check_point(op, cfg, alloc)
    _check_spectrum(cfg, spectrum)
    if spectrum.is_uncorrelated:
        return lower_bound_uncorr(op, cfg, alloc)
    value = 1.0
    for l, b_l in enumerate(alloc.b, start=1):
        value *= mixture_cdf(branch_mixture(spectrum, l, cfg), xi(b_l, op, cfg))
    return float(value)


def lower_bound(
    op: OperatingPoint,
    cfg: AntennaConfig,
    spectrum: Optional[EigenSpectrum],
    alloc: Allocation,
) -> OutageEstimate:
    """Applicable bound wrapped with its provenance."""
    if spectrum is None:
        value = lower_bound_uncorr(op, cfg, alloc)
    else:
        value = lower_bound_corr(op, cfg, spectrum, alloc)
    return OutageEstimate(value=value, kind="lower-bound", allocation=alloc)


def _simplex_grid(r: float, t: int) -> tuple[np.ndarray, int]:
    """All b >= 0 with sum r on a lattice of step r/steps (compositions of steps into t parts)."""
    steps = GRID_STEPS
    while steps > 1 and math.comb(steps + t - 1, t - 1) > MAX_GRID_POINTS:
        steps -= 1
    rows = []
    for bars in itertools.combinations(range(steps + t - 1), t - 1):
        edges = (-1, *bars, steps + t - 1)
        rows.append([edges[i + 1] - edges[i] - 1 for i in range(t)])
    return np.array(rows, dtype=float) * (r / steps), steps


def _project(x: np.ndarray, r: float) -> np.ndarray:
    """Map the free coordinates b_1..b_(t-1) onto the simplex sum b = r."""
    head = np.clip(x, 0.0, r)
    total = head.sum()
    if total > r:
        head = head * (r / total)
    return np.append(head, max(r - head.sum(), 0.0))


def optimize_allocation(
    op: OperatingPoint,
    cfg: AntennaConfig,
    spectrum: Optional[EigenSpectrum] = None,
) -> tuple[Allocation, float]:
    """Maximize the applicable bound over {b >= 0, sum b = r}.

    A coarse lattice over the simplex picks the start point, Nelder-Mead on the
    first t-1 coordinates refines it (b_t = r - sum of the others, clamped at 0),
    and the better of the two is kept. Equal values resolve to the
    lexicographically smallest b.

    Args:
        op: Operating point (linear eta, multiplexing gain r)
        cfg: Antenna configuration
        spectrum: Transmit eigen-spectrum, None for the uncorrelated bound

    Returns:
        Tuple of (maximizing Allocation, maximized bound value)
    """
    _check_point(op, cfg)
    if spectrum is not None:
        _check_spectrum(cfg, spectrum)
    t, r = cfg.t, op.r

    if r == 0.0:
        return Allocation(b=(0.0,) * t), 0.0
    if t == 1:
        return Allocation(b=(r,)), math.exp(log_lower_bound(op, cfg, spectrum, [r]))

    grid, steps = _simplex_grid(r, t)
    values = _log_bounds(grid, op, cfg, spectrum)
    best_value = values.max()
    tied = np.flatnonzero(values == best_value)
    best_b = min((grid[i] for i in tied), key=tuple)

    def objective(x: np.ndarray) -> float:
        value = log_lower_bound(op, cfg, spectrum, _project(x, r))
        return -value if math.isfinite(value) else _LOG_ZERO_PENALTY

    if math.isfinite(best_value):
        x0 = best_b[:-1]
        h = r / steps
        simplex = [x0]
        for i in range(t - 1):
            vertex = x0.copy()
            vertex[i] = vertex[i] + h if vertex[i] + h <= r else vertex[i] - h
            simplex.append(vertex)
        result = optimize.minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={
                "initial_simplex": np.array(simplex),
                "xatol": 1e-10,
                "fatol": OPT_TOL,
                "maxiter": 400 * t,
            },
        )
        refined_b = _project(result.x, r)
        refined_value = log_lower_bound(op, cfg, spectrum, refined_b)
        if refined_value > best_value:
            best_b, best_value = refined_b, refined_value

    logger.debug(f"Optimized allocation at r={r}, eta={op.eta:.4g}: b={best_b.tolist()}")
    return Allocation(b=tuple(float(v) for v in best_b)), math.exp(best_value)
