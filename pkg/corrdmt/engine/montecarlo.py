"""Monte Carlo ground truth: mutual information, empirical outage and direct Delta_l draws."""

import logging
import math
from typing import Optional

import numpy as np

from ..core.errors import InsufficientSamplesError, InvalidParameterError
from ..schemas.channel import AntennaConfig, ChannelMatrix, CorrelationMatrix, EigenSpectrum
from ..schemas.montecarlo import McConfig, McDiversity, McResult
from ..schemas.outage import OperatingPoint
from .channel import identity_correlation, sample_channels

logger = logging.getLogger(__name__)


def _log2_det_batch(h: np.ndarray, eta: float, n_t: int) -> np.ndarray:
    """log2 det(I + (eta/n_t) H H^H) for a (size, n_r, n_t) batch, on the smaller Gram side."""
    if h.shape[-2] <= h.shape[-1]:
        gram = h @ np.conj(np.swapaxes(h, -1, -2))
    else:
        gram = np.conj(np.swapaxes(h, -1, -2)) @ h
    m = np.eye(gram.shape[-1]) + (eta / n_t) * gram
    _, logdet = np.linalg.slogdet(m)
    return logdet / math.log(2.0)


def mutual_information(h: ChannelMatrix, eta: float, n_t: int) -> float:
    """I = log2 det(I_nr + (eta/n_t) H H^H) in bits per channel use."""
    if not (eta > 0.0 and math.isfinite(eta)):
        raise InvalidParameterError(f"eta must be positive and finite, got {eta}")
    value = float(_log2_det_batch(h.entries[None, :, :], eta, n_t)[0])
    return max(value, 0.0)


def _stream_sizes(mc: McConfig) -> list[int]:
    base, extra = divmod(mc.n_samples, mc.stream_count)
    return [base + (1 if i < extra else 0) for i in range(mc.stream_count)]


def _count_outages(
    op: OperatingPoint,
    cfg: AntennaConfig,
    r_t: CorrelationMatrix,
    r_r: CorrelationMatrix,
    mc: McConfig,
) -> int:
    rate = op.rate(cfg.g)
    outages = 0
    for seed_seq, n in zip(np.random.SeedSequence(mc.seed).spawn(mc.stream_count), _stream_sizes(mc)):
        rng = np.random.default_rng(seed_seq)
        remaining = n
        while remaining > 0:
            size = min(mc.batch_size, remaining)
            info = _log2_det_batch(sample_channels(cfg, r_t, r_r, rng, size), op.eta, cfg.n_t)
            outages += int(np.count_nonzero(info < rate))
            remaining -= size
    return outages


def outage_mc(
    op: OperatingPoint,
    cfg: AntennaConfig,
    r_t: CorrelationMatrix,
    mc: McConfig,
    r_r: Optional[CorrelationMatrix] = None,
) -> McResult:
    """Fraction of sampled channels with I < R, R = r log2(1 + g eta).

    Samples are split over mc.stream_count independent streams spawned from
    mc.seed, so the count depends only on (seed, n_samples, stream_count).

    Args:
        op: Operating point (linear eta, multiplexing gain r)
        cfg: Antenna configuration
        r_t: Transmit correlation (n_t x n_t)
        mc: Sample budget and seeding
        r_r: Receive correlation, identity when omitted

    Returns:
        McResult with binomial standard error
    """
    if op.r > cfg.t:
        raise InvalidParameterError(f"multiplexing gain {op.r} exceeds t = {cfg.t}")
    r_r = r_r if r_r is not None else identity_correlation(cfg.n_r)
    logger.debug(f"Simulating {mc.n_samples} channels over {mc.stream_count} streams (seed {mc.seed})")
    return McResult.from_counts(_count_outages(op, cfg, r_t, r_r, mc), mc.n_samples)


def diversity_fd(
    op: OperatingPoint,
    cfg: AntennaConfig,
    r_t: CorrelationMatrix,
    mc: McConfig,
    rel_step: float = 1e-2,
    r_r: Optional[CorrelationMatrix] = None,
) -> McDiversity:
    """Central difference -eta (ln p+ - ln p-)/(eta+ - eta-) of simulated outage.

    Both points reuse the same seed. The reported stderr propagates the
    binomial errors as if the two estimates were independent, which
    overstates it under the shared draws.

    Raises:
        InsufficientSamplesError: If either point has no outage events
    """
    if not 0.0 < rel_step < 1.0:
        raise InvalidParameterError(f"rel_step must lie in (0, 1), got {rel_step}")
    eta_minus, eta_plus = op.eta * (1.0 - rel_step), op.eta * (1.0 + rel_step)
    p_minus = outage_mc(OperatingPoint(eta=eta_minus, r=op.r), cfg, r_t, mc, r_r)
    p_plus = outage_mc(OperatingPoint(eta=eta_plus, r=op.r), cfg, r_t, mc, r_r)
    for p, eta in ((p_minus, eta_minus), (p_plus, eta_plus)):
        if p.n_outages == 0:
            raise InsufficientSamplesError(
                f"no outage events in {p.n_samples} samples at eta={eta:.6g}, r={op.r}; increase --samples"
            )

    scale = op.eta / (eta_plus - eta_minus)
    value = -scale * (math.log(p_plus.p_out) - math.log(p_minus.p_out))
    log_var = sum((1.0 - p.p_out) / (p.n_samples * p.p_out) for p in (p_minus, p_plus))
    return McDiversity(value=value, stderr=scale * math.sqrt(log_var), p_minus=p_minus, p_plus=p_plus)


def sample_delta(
    spectrum: EigenSpectrum,
    l: int,
    cfg: AntennaConfig,
    rng: np.random.Generator,
    size: Optional[int] = None,
) -> float | np.ndarray:
    """Draw Delta_l = D_l^2 Gamma(n_r - l + 1, 1) + sum_{k>l} D_k^2 Exp(1)."""
    if spectrum.n_t != cfg.n_t:
        raise InvalidParameterError(f"spectrum has {spectrum.n_t} entries, expected n_t = {cfg.n_t}")
    if not 1 <= l <= cfg.t:
        raise InvalidParameterError(f"branch index must lie in [1, {cfg.t}], got {l}")
    d_sq = spectrum.d_sq
    draws = d_sq[l - 1] * rng.gamma(cfg.n_r - l + 1, 1.0, size)
    for k in range(l, cfg.n_t):
        draws = draws + d_sq[k] * rng.exponential(1.0, size)
    return float(draws) if size is None else draws
