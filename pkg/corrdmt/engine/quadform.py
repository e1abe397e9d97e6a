"""Law of the branch variables Delta_l as signed Gamma mixtures.

Delta_l = D_l^2 * Gamma(n_r - l + 1, 1) + sum_{k > l} D_k^2 * Exp(1) has the
rational transform

    Psi(s) = (1 - s D_l^2)^(-(n_r - l + 1)) * prod_{k > l} (1 - s D_k^2)^(-1)

whose partial-fraction expansion gives a signed mixture of Gamma densities.
Near zero the signed sum cancels catastrophically, so pdf/cdf switch to a
series over single-scale Gamma densities with nonnegative weights there.
"""

import logging
from functools import lru_cache

import numpy as np
from scipy import special, stats

from ..core.errors import DegenerateSpectrumError, InvalidParameterError, PoleEvaluationError
from ..schemas.channel import AntennaConfig, EigenSpectrum
from ..schemas.quadform import GammaMixture, GammaTerm, MgfSpec

logger = logging.getLogger(__name__)

# Pole scales closer than this (relative) are treated as repeated
TIE_REL_TOL = 1e-9
# Multiplicative split applied inside a tie group
TIE_PERTURBATION = 1e-7
# Partial fractions with larger weights are too ill-conditioned to use
MAX_ABS_WEIGHT = 1e8
# Distance from a pole below which the transform is not evaluated
POLE_TOL = 1e-12
# Beyond this argument the regularized incomplete gamma is 1 in double precision
GAMMA_INC_CUTOFF = 700.0
# Signed sums smaller than this fraction of their absolute sum are recomputed by series
CANCELLATION_RATIO = 1e-6
MAX_SERIES_TERMS = 4000
SERIES_REL_TOL = 1e-15


def gamma_inc(x: float, a: int) -> float:
    """Regularized lower incomplete gamma (1/(a-1)!) * int_0^x t^(a-1) e^(-t) dt.

    Args:
        x: Nonnegative argument
        a: Integer shape >= 1

    Returns:
        Value in [0, 1]

    Raises:
        InvalidParameterError: If x < 0 or a < 1
    """
    if not x >= 0.0:
        raise InvalidParameterError(f"gamma_inc argument must be >= 0, got {x}")
    if int(a) != a or a < 1:
        raise InvalidParameterError(f"gamma_inc shape must be an integer >= 1, got {a}")
    if x > GAMMA_INC_CUTOFF:
        return 1.0
    return float(special.gammainc(int(a), x))


def mgf(spec: MgfSpec, s: complex) -> complex:
    """Evaluate (1 - s b0)^(-m) * prod_k (1 - s b_k)^(-1) at s = jv.

    Raises:
        PoleEvaluationError: If s lies within POLE_TOL of a pole
    """
    value = complex(1.0)
    for shape, scale in spec.components:
        factor = 1.0 - complex(s) * scale
        if abs(factor) < POLE_TOL:
            raise PoleEvaluationError(f"transform evaluated at its pole s = {1.0 / scale}")
        value *= factor ** (-shape)
    return value


def _check_distinct(scales: list[float], tol: float = TIE_REL_TOL) -> None:
    for i, a in enumerate(scales):
        for b in scales[i + 1 :]:
            if abs(a - b) <= tol * max(a, b):
                raise DegenerateSpectrumError(
                    f"pole scales {a} and {b} coincide within relative {tol}; "
                    "use the uncorrelated path or resolve ties first"
                )


def partial_fraction_weights(spec: MgfSpec, source_index: int = 1) -> GammaMixture:
    """Expand the branch transform into a signed Gamma mixture.

    The multiple pole contributes Gamma(k, b0) terms for k = 1..m with weights
    a_k = T_(m-k) * (-1/b0)^(m-k), where T_n are Taylor coefficients at
    s0 = 1/b0 of the product of the simple factors. Each simple factor
    1/(c - t b) expands as sum_n (b/c)^n t^n / c, and the product's
    coefficients are the truncated convolution of those series. Each simple
    pole contributes one Exp(b_j) term with its residue weight.

    Args:
        spec: Pole structure of the transform
        source_index: Branch index recorded on the mixture

    Returns:
        GammaMixture whose weights sum to 1

    Raises:
        DegenerateSpectrumError: If poles coincide or weights exceed MAX_ABS_WEIGHT
    """
    b0 = spec.multiple_pole_scale
    m = spec.multiple_pole_order
    simple = list(spec.simple_pole_scales)
    _check_distinct([b0, *simple])

    taylor = np.array([1.0])
    for b in simple:
        c = 1.0 - b / b0
        factor = (b / c) ** np.arange(m) / c
        taylor = np.convolve(taylor, factor)[:m]
    taylor = np.pad(taylor, (0, m - len(taylor)))

    terms = [
        GammaTerm(weight=float(taylor[m - k] * (-1.0 / b0) ** (m - k)), shape=k, scale=b0)
        for k in range(1, m + 1)
    ]
    for j, bj in enumerate(simple):
        residue = (1.0 - b0 / bj) ** (-m)
        for k, bk in enumerate(simple):
            if k != j:
                residue /= 1.0 - bk / bj
        terms.append(GammaTerm(weight=float(residue), shape=1, scale=bj))

    mixture = GammaMixture(terms=tuple(terms), source_index=source_index, components=spec.components)
    if mixture.max_abs_weight > MAX_ABS_WEIGHT:
        raise DegenerateSpectrumError(
            f"partial-fraction weights reach {mixture.max_abs_weight:.3e} (> {MAX_ABS_WEIGHT:.0e}); "
            "the spectrum is too close to degenerate"
        )
    return mixture


def mixture_mgf(mix: GammaMixture, s: complex) -> complex:
    """Transform of the mixture, sum_i w_i (1 - s b_i)^(-a_i)."""
    return sum(term.weight * (1.0 - complex(s) * term.scale) ** (-term.shape) for term in mix.terms)


def _as_nonnegative(x: float | np.ndarray) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr >= 0.0)):
        raise InvalidParameterError("mixture argument must be >= 0")
    return arr


def _series_weights(components: tuple[tuple[int, float], ...]):
    """Generator of (shape, weight, tail_mass) for the single-scale Gamma series.

    A sum of independent Gamma(a_i, b_i) variables equals a mixture of
    Gamma(A + k, b_min) laws, A = sum a_i, with nonnegative weights
    C * delta_k, C = prod (b_min / b_i)^a_i, delta_0 = 1 and
    delta_(k+1) = (1 / (k+1)) sum_(i=1..k+1) i gamma_i delta_(k+1-i),
    gamma_i = sum_j a_j (1 - b_min / b_j)^i / i.
    """
    shapes = np.array([a for a, _ in components], dtype=float)
    scales = np.array([b for _, b in components], dtype=float)
    b_min = scales.min()
    total_shape = int(shapes.sum())
    ratios = 1.0 - b_min / scales
    log_c = float(np.sum(shapes * np.log(b_min / scales)))
    c = np.exp(log_c)

    delta = np.zeros(MAX_SERIES_TERMS + 1)
    i_gamma = np.zeros(MAX_SERIES_TERMS + 1)  # i * gamma_i
    delta[0] = 1.0
    tail = 1.0
    for k in range(MAX_SERIES_TERMS):
        weight = c * delta[k]
        tail -= weight
        yield total_shape + k, weight, max(tail, 0.0), b_min
        i = k + 1
        i_gamma[i] = float(np.sum(shapes * ratios**i))
        delta[i] = float(np.dot(i_gamma[1 : i + 1], delta[i - 1 :: -1][:i])) / i


def _series_cdf(components: tuple[tuple[int, float], ...], x: np.ndarray) -> np.ndarray:
    total = np.zeros_like(x)
    for shape, weight, tail, scale in _series_weights(components):
        z = x / scale
        total += weight * special.gammainc(shape, z)
        remainder = tail * special.gammainc(shape + 1, z)
        if np.all(remainder <= SERIES_REL_TOL * total) or tail <= 0.0:
            return total
    logger.warning("Gamma series for the mixture cdf hit the term limit")
    return total


def _series_pdf(components: tuple[tuple[int, float], ...], x: np.ndarray) -> np.ndarray:
    total = np.zeros_like(x)
    for shape, weight, tail, scale in _series_weights(components):
        total += weight * stats.gamma.pdf(x, shape, scale=scale)
        past_mode = x / scale <= shape
        remainder = tail * stats.gamma.pdf(x, shape + 1, scale=scale)
        if (np.all(past_mode) and np.all(remainder <= SERIES_REL_TOL * total)) or tail <= 0.0:
            return total
    logger.warning("Gamma series for the mixture pdf hit the term limit")
    return total


def _signed_sum(mix: GammaMixture, x: np.ndarray, kernel) -> tuple[np.ndarray, np.ndarray]:
    value = np.zeros_like(x)
    magnitude = np.zeros_like(x)
    for term in mix.terms:
        contribution = term.weight * kernel(term, x)
        value += contribution
        magnitude += np.abs(contribution)
    return value, magnitude


def _pdf_kernel(term: GammaTerm, x: np.ndarray) -> np.ndarray:
    return stats.gamma.pdf(x, term.shape, scale=term.scale)


def _cdf_kernel(term: GammaTerm, x: np.ndarray) -> np.ndarray:
    z = x / term.scale
    return np.where(z > GAMMA_INC_CUTOFF, 1.0, special.gammainc(term.shape, np.minimum(z, GAMMA_INC_CUTOFF)))


def _evaluate(mix: GammaMixture, x: float | np.ndarray, kernel, series) -> float | np.ndarray:
    arr = _as_nonnegative(x)
    flat = np.atleast_1d(arr).astype(float)
    value, magnitude = _signed_sum(mix, flat, kernel)
    cancelled = (magnitude > 0.0) & (np.abs(value) < CANCELLATION_RATIO * magnitude)
    if np.any(cancelled) and mix.components:
        value[cancelled] = series(mix.components, flat[cancelled])
    value = value.reshape(arr.shape)
    return float(value) if value.ndim == 0 else value


def mixture_pdf(mix: GammaMixture, x: float | np.ndarray) -> float | np.ndarray:
    """Density of the mixture at x >= 0 (scalar or array)."""
    return _evaluate(mix, x, _pdf_kernel, _series_pdf)


def mixture_cdf(mix: GammaMixture, x: float | np.ndarray) -> float | np.ndarray:
    """Distribution function sum_i w_i * gamma_inc(x / b_i, a_i), clipped to [0, 1]."""
    value = _evaluate(mix, x, _cdf_kernel, _series_cdf)
    return float(np.clip(value, 0.0, 1.0)) if np.ndim(value) == 0 else np.clip(value, 0.0, 1.0)


def resolve_ties(spectrum: EigenSpectrum) -> EigenSpectrum:
    """Split near-coincident eigenvalues so the partial fractions exist.

    Values within TIE_REL_TOL of their neighbour form a group; a group of n
    values is scaled by 1 + TIE_PERTURBATION * (n - 1 - 2i), i = 0..n-1, which
    keeps the order and the trace. The all-ones spectrum is returned unchanged
    (callers route it to the uncorrelated path).
    """
    if spectrum.is_uncorrelated:
        return spectrum
    values = list(spectrum.d_sq)
    groups: list[list[int]] = [[0]]
    for i in range(1, len(values)):
        prev = values[groups[-1][-1]]
        if abs(prev - values[i]) <= TIE_REL_TOL * max(prev, values[i]):
            groups[-1].append(i)
        else:
            groups.append([i])
    ties = [g for g in groups if len(g) > 1]
    if not ties:
        return spectrum
    for group in ties:
        n = len(group)
        for i, idx in enumerate(group):
            values[idx] *= 1.0 + TIE_PERTURBATION * (n - 1 - 2 * i)
    logger.warning(
        f"Eigenvalues {[[spectrum.d_sq[i] for i in g] for g in ties]} are repeated; "
        f"split by relative {TIE_PERTURBATION:.0e}"
    )
    return EigenSpectrum(d_sq=tuple(values))


def branch_mgf_spec(spectrum: EigenSpectrum, l: int, cfg: AntennaConfig) -> MgfSpec:
    """Pole structure of Delta_l: order n_r - l + 1 at D_l^2, simple poles at D_k^2, k > l."""
    if spectrum.n_t != cfg.n_t:
        raise InvalidParameterError(f"spectrum has {spectrum.n_t} entries, expected n_t = {cfg.n_t}")
    if not 1 <= l <= cfg.t:
        raise InvalidParameterError(f"branch index must lie in [1, {cfg.t}], got {l}")
    if not spectrum.is_full_rank:
        raise InvalidParameterError("transmit correlation must have full rank")
    return MgfSpec(
        multiple_pole_scale=spectrum.d_sq[l - 1],
        multiple_pole_order=cfg.n_r - l + 1,
        simple_pole_scales=spectrum.d_sq[l:],
    )


@lru_cache(maxsize=256)
def branch_mixture(spectrum: EigenSpectrum, l: int, cfg: AntennaConfig) -> GammaMixture:
    """Signed Gamma mixture of Delta_l after tie resolution (cached per spectrum)."""
    return partial_fraction_weights(branch_mgf_spec(resolve_ties(spectrum), l, cfg), source_index=l)
