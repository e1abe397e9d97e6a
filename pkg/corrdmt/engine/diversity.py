"""Finite-SNR diversity estimates, maximum diversity and the asymptotic tradeoff.

The estimates are -eta * d ln(bound)/d eta with the allocation b held fixed:

    d_hat = (n_t/eta) * sum_l K_l * f_l(xi_l) / F_l(xi_l)
    K_l   = (1 + g eta)^b_l - b_l g eta (1 + g eta)^(b_l - 1) - 1

where F_l is the branch cdf (incomplete gamma, or the Gamma-mixture cdf) and
f_l its density.
"""

import itertools
import logging
import math
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import optimize, special

from ..core.errors import InvalidParameterError, NumericalFailureError
from ..schemas.channel import AntennaConfig, CorrelationMatrix, EigenSpectrum
from ..schemas.diversity import AsymptoticTerms, BranchAsymptotics, CurveKind, DiversityEstimate, DMTCurve
from ..schemas.montecarlo import McConfig
from ..schemas.outage import Allocation, OperatingPoint
from .montecarlo import diversity_fd
from .outage import _check_point, _check_spectrum, optimize_allocation, xi
from .quadform import GAMMA_INC_CUTOFF, branch_mixture, mixture_cdf, mixture_pdf

logger = logging.getLogger(__name__)


def _k_term(b_l: float, op: OperatingPoint, cfg: AntennaConfig) -> float:
    """K_l = (1 + g eta)^b - b g eta (1 + g eta)^(b-1) - 1 (exactly 0 at b = 1)."""
    if b_l == 1.0:
        return 0.0
    log_snr = math.log1p(cfg.g * op.eta)
    return math.expm1(b_l * log_snr) - b_l * cfg.g * op.eta * math.exp((b_l - 1.0) * log_snr)


def _zero_rate_term(shape: int, op: OperatingPoint, cfg: AntennaConfig) -> float:
    """Limit of (n_t/eta) K_l f_l/F_l as b_l -> 0: shape * [1 - g eta/((1 + g eta) ln(1 + g eta))]."""
    x = cfg.g * op.eta
    return shape * (1.0 - x / ((1.0 + x) * math.log1p(x)))


def _uncorr_ratio(xi_l: float, shape: int) -> Optional[float]:
    """J_l = f(xi)/F(xi) for the Gamma(shape, 1) law; None at xi = 0."""
    if xi_l <= 0.0:
        return None
    log_pdf = (shape - 1) * math.log(xi_l) - xi_l - special.gammaln(shape)
    if xi_l > GAMMA_INC_CUTOFF:
        return math.exp(log_pdf)
    cdf = special.gammainc(shape, xi_l)
    if cdf <= 0.0:
        return shape / xi_l
    return math.exp(log_pdf - math.log(cdf))


def _corr_ratio(xi_l: float, spectrum: EigenSpectrum, l: int, cfg: AntennaConfig) -> Optional[float]:
    """Q_l/P_l for the Gamma-mixture law of Delta_l; None at xi = 0."""
    if xi_l <= 0.0:
        return None
    mix = branch_mixture(spectrum, l, cfg)
    p = mixture_cdf(mix, xi_l)
    if p <= 0.0:
        return cfg.branch_shape(l) / xi_l
    return mixture_pdf(mix, xi_l) / p


def _estimate(
    op: OperatingPoint,
    cfg: AntennaConfig,
    alloc: Allocation,
    ratio: Callable[[float, int], Optional[float]],
) -> float:
    total = 0.0
    for l, b_l in enumerate(alloc.b, start=1):
        shape = cfg.branch_shape(l)
        if b_l == 0.0:
            total += _zero_rate_term(shape, op, cfg)
            continue
        k = _k_term(b_l, op, cfg)
        if k == 0.0:
            continue
        total += cfg.n_t / op.eta * k * ratio(xi(b_l, op, cfg), l)
    if total < 0.0:
        # b_l > 1 makes K_l negative; the bound then grows with eta at this b
        logger.debug(f"Negative estimate {total:.3e} at r={op.r}, eta={op.eta:.4g}")
    return total


def _require_positive_rate(op: OperatingPoint) -> None:
    if op.r <= 0.0:
        raise InvalidParameterError("diversity estimates need r > 0; use d_max for r = 0")


def estimate_uncorr(op: OperatingPoint, cfg: AntennaConfig, alloc: Allocation) -> DiversityEstimate:
    """Diversity estimate from the uncorrelated bound at a fixed allocation.

    Raises:
        InvalidParameterError: If r = 0 or the allocation is invalid
    """
    _require_positive_rate(op)
    _check_point(op, cfg, alloc)
    value = _estimate(op, cfg, alloc, lambda x, l: _uncorr_ratio(x, cfg.branch_shape(l)))
    return DiversityEstimate(value=value, r=op.r, eta=op.eta, flavor="uncorrelated", allocation=alloc)


def estimate_corr(
    op: OperatingPoint,
    cfg: AntennaConfig,
    spectrum: EigenSpectrum,
    alloc: Allocation,
) -> DiversityEstimate:
    """Diversity estimate from the correlated bound at a fixed allocation.

    The all-ones spectrum is routed to estimate_uncorr.

    Raises:
        InvalidParameterError: If r = 0, the allocation is invalid or the spectrum is rank-deficient
        DegenerateSpectrumError: If the partial fractions are ill-conditioned
    """
    _require_positive_rate(op)
    _check_point(op, cfg, alloc)
    _check_spectrum(cfg, spectrum)
    if spectrum.is_uncorrelated:
        return estimate_uncorr(op, cfg, alloc)
    value = _estimate(op, cfg, alloc, lambda x, l: _corr_ratio(x, spectrum, l, cfg))
    return DiversityEstimate(value=value, r=op.r, eta=op.eta, flavor="correlated", allocation=alloc)


def d_max(eta: float, cfg: AntennaConfig) -> float:
    """Maximum diversity n_t n_r [1 - g eta/((1 + g eta) ln(1 + g eta))], the r -> 0 limit."""
    if not (eta > 0.0 and math.isfinite(eta)):
        raise InvalidParameterError(f"eta must be positive and finite, got {eta}")
    return cfg.n_t * cfg.n_r * (1.0 - cfg.g * eta / ((1.0 + cfg.g * eta) * math.log1p(cfg.g * eta)))


def _check_rate(r: float, cfg: AntennaConfig) -> None:
    if not 0.0 <= r <= cfg.t:
        raise InvalidParameterError(f"multiplexing gain {r} outside [0, {cfg.t}]")


def d_asym(r: float, cfg: AntennaConfig) -> float:
    """High-SNR tradeoff: min sum_l (n_r + n_t - 2l + 1) alpha_l s.t. sum_l (1 - alpha_l)^+ <= r.

    The weights decrease in l, so the budget r lowers alpha_l from 1 toward 0
    starting at l = 1.

    Raises:
        InvalidParameterError: If r is outside [0, t]
    """
    _check_rate(r, cfg)
    budget = r
    cost = 0.0
    for l in range(1, cfg.t + 1):
        spend = min(1.0, budget)
        budget -= spend
        cost += cfg.branch_shape(l) * (1.0 - spend)
    return cost


def d_asym_lp(r: float, cfg: AntennaConfig) -> float:
    """Same program solved as a generic linear program (0 <= alpha <= 1)."""
    _check_rate(r, cfg)
    t = cfg.t
    weights = [cfg.branch_shape(l) for l in range(1, t + 1)]
    result = optimize.linprog(
        c=weights,
        A_ub=[[-1.0] * t],
        b_ub=[r - t],
        bounds=[(0.0, 1.0)] * t,
        method="highs",
    )
    if not result.success:
        raise NumericalFailureError(f"linear program failed: {result.message}")
    return float(result.fun)


def d_asym_bruteforce(r: float, cfg: AntennaConfig, resolution: float = 0.1) -> float:
    """Exhaustive search over alpha in {0, resolution, ..., 1}^t."""
    _check_rate(r, cfg)
    steps = round(1.0 / resolution)
    levels = np.linspace(0.0, 1.0, steps + 1)
    grid = np.array(list(itertools.product(levels, repeat=cfg.t)))
    weights = np.array([cfg.branch_shape(l) for l in range(1, cfg.t + 1)], dtype=float)
    feasible = np.sum(1.0 - grid, axis=1) <= r + 1e-9
    return float(np.min(grid[feasible] @ weights))


def asymptotic_estimate(alloc: Allocation, cfg: AntennaConfig) -> float:
    """eta -> infinity limit of the estimate at fixed b: sum_l (n_t + n_r - 2l + 1)(1 - b_l)^+."""
    return sum(cfg.branch_shape(l) * max(1.0 - b_l, 0.0) for l, b_l in enumerate(alloc.b, start=1))


def asymptotic_terms(
    op: OperatingPoint,
    cfg: AntennaConfig,
    spectrum: Optional[EigenSpectrum],
    alloc: Allocation,
) -> AsymptoticTerms:
    """Per-branch J_l, K_l, Q_l/P_l and their small-xi approximations (diagnostic)."""
    _check_point(op, cfg, alloc)
    correlated = spectrum is not None and not spectrum.is_uncorrelated
    if spectrum is not None:
        _check_spectrum(cfg, spectrum)
    branches = []
    for l, b_l in enumerate(alloc.b, start=1):
        shape = cfg.branch_shape(l)
        xi_l = xi(b_l, op, cfg)
        j = _uncorr_ratio(xi_l, shape)
        branches.append(
            BranchAsymptotics(
                l=l,
                b=b_l,
                case="above" if b_l > 1.0 else "below" if b_l < 1.0 else "at",
                xi=xi_l,
                xi_approx=cfg.n_t * cfg.g**b_l * op.eta ** (b_l - 1.0),
                j=j,
                k=_k_term(b_l, op, cfg),
                q_over_p=_corr_ratio(xi_l, spectrum, l, cfg) if correlated else j,
                j_approx=shape / xi_l if xi_l > 0.0 else None,
            )
        )
    return AsymptoticTerms(branches=branches)


def relative_gain(r: float, eta: float, cfg: AntennaConfig, spectrum: EigenSpectrum) -> float:
    """Ratio of the optimized correlated estimate to the optimized uncorrelated one."""
    op = OperatingPoint(eta=eta, r=r)
    _require_positive_rate(op)
    if spectrum.is_uncorrelated:
        return 1.0
    alloc_corr, _ = optimize_allocation(op, cfg, spectrum)
    alloc_uncorr, _ = optimize_allocation(op, cfg, None)
    corr = estimate_corr(op, cfg, spectrum, alloc_corr).value
    uncorr = estimate_uncorr(op, cfg, alloc_uncorr).value
    if uncorr <= 0.0:
        raise NumericalFailureError(f"uncorrelated estimate vanished at r={r}, eta={eta}")
    return corr / uncorr


def numerical_diversity(fn: Callable[[float], float], eta: float, rel_step: float = 1e-5) -> float:
    """Central difference -eta (ln fn(eta+) - ln fn(eta-)) / (eta+ - eta-), eta+- = eta (1 +- rel_step)."""
    lo, hi = eta * (1.0 - rel_step), eta * (1.0 + rel_step)
    return -eta * (math.log(fn(hi)) - math.log(fn(lo))) / (hi - lo)


def tradeoff_curve(
    kind: CurveKind,
    r_values: Sequence[float],
    cfg: AntennaConfig,
    eta: Optional[float] = None,
    spectrum: Optional[EigenSpectrum] = None,
    r_t: Optional[CorrelationMatrix] = None,
    mc: Optional[McConfig] = None,
) -> DMTCurve:
    """Tradeoff curve over increasing r values.

    "asymptotic" ignores eta; the estimate kinds optimize b per point and use
    d_max at r = 0. "monte-carlo" differentiates simulated outage (needs r_t
    and mc) and also uses d_max at r = 0.
    """
    r_sorted = sorted(r_values)
    for r in r_sorted:
        _check_rate(r, cfg)
    if kind == "asymptotic":
        return DMTCurve(kind=kind, points=tuple((r, d_asym(r, cfg)) for r in r_sorted))
    if kind not in ("estimate-uncorr", "estimate-corr", "monte-carlo") or eta is None:
        raise InvalidParameterError(f"cannot build a '{kind}' curve here (finite-SNR kinds need eta)")
    if kind == "estimate-corr" and spectrum is None:
        raise InvalidParameterError("estimate-corr curve needs a spectrum")
    if kind == "monte-carlo" and (r_t is None or mc is None):
        raise InvalidParameterError("monte-carlo curve needs a transmit correlation and Monte Carlo settings")

    points = []
    for r in r_sorted:
        if r == 0.0:
            points.append((r, d_max(eta, cfg)))
            continue
        op = OperatingPoint(eta=eta, r=r)
        if kind == "monte-carlo":
            points.append((r, diversity_fd(op, cfg, r_t, mc).value))
        elif kind == "estimate-corr":
            alloc, _ = optimize_allocation(op, cfg, spectrum)
            points.append((r, estimate_corr(op, cfg, spectrum, alloc).value))
        else:
            alloc, _ = optimize_allocation(op, cfg, None)
            points.append((r, estimate_uncorr(op, cfg, alloc).value))
    return DMTCurve(kind=kind, points=tuple(points), eta=eta)
