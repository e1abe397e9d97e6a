"""Computational engine: channel model, quadratic forms, outage bounds, diversity and Monte Carlo."""

from .channel import (
    build_single_coeff_correlation,
    eigen_spectrum,
    identity_correlation,
    matrix_sqrt,
    sample_channel,
    sample_channels,
)
from .diversity import (
    asymptotic_estimate,
    asymptotic_terms,
    d_asym,
    d_asym_bruteforce,
    d_asym_lp,
    d_max,
    estimate_corr,
    estimate_uncorr,
    numerical_diversity,
    relative_gain,
    tradeoff_curve,
)
from .montecarlo import diversity_fd, mutual_information, outage_mc, sample_delta
from .outage import (
    log_lower_bound,
    lower_bound,
    lower_bound_corr,
    lower_bound_uncorr,
    optimize_allocation,
    siso_outage,
    xi,
)
from .quadform import (
    branch_mgf_spec,
    branch_mixture,
    gamma_inc,
    mgf,
    mixture_cdf,
    mixture_mgf,
    mixture_pdf,
    partial_fraction_weights,
    resolve_ties,
)

__all__ = [
    # Channel
    "build_single_coeff_correlation",
    "eigen_spectrum",
    "identity_correlation",
    "matrix_sqrt",
    "sample_channel",
    "sample_channels",
    # Quadratic forms
    "branch_mgf_spec",
    "branch_mixture",
    "gamma_inc",
    "mgf",
    "mixture_cdf",
    "mixture_mgf",
    "mixture_pdf",
    "partial_fraction_weights",
    "resolve_ties",
    # Outage
    "log_lower_bound",
    "lower_bound",
    "lower_bound_corr",
    "lower_bound_uncorr",
    "optimize_allocation",
    "siso_outage",
    "xi",
    # Diversity
    "asymptotic_estimate",
    "asymptotic_terms",
    "d_asym",
    "d_asym_bruteforce",
    "d_asym_lp",
    "d_max",
    "estimate_corr",
    "estimate_uncorr",
    "numerical_diversity",
    "relative_gain",
    "tradeoff_curve",
    # Monte Carlo
    "diversity_fd",
    "mutual_information",
    "outage_mc",
    "sample_delta",
]
