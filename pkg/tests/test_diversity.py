"""Tests for diversity estimates, maximum diversity and the asymptotic tradeoff."""

import math

import pytest

from corrdmt.core.errors import InvalidParameterError
from corrdmt.engine.channel import identity_correlation
from corrdmt.engine.diversity import (
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
from corrdmt.engine.outage import lower_bound_corr, lower_bound_uncorr, optimize_allocation, siso_outage
from corrdmt.schemas import Allocation, AntennaConfig, EigenSpectrum, McConfig, OperatingPoint
from corrdmt.utils.grid import db_to_linear, make_grid

from .conftest import spectrum_for

ETA_DB_GRID = [0.0, 5.0, 10.0, 15.0, 20.0]
HIGH_SNR_DB = [20.0, 40.0, 60.0, 80.0, 100.0]


def _optimized_uncorr(op: OperatingPoint, cfg: AntennaConfig) -> float:
    alloc, _ = optimize_allocation(op, cfg)
    return estimate_uncorr(op, cfg, alloc).value


def _optimized_corr(op: OperatingPoint, cfg: AntennaConfig, spectrum: EigenSpectrum) -> float:
    alloc, _ = optimize_allocation(op, cfg, spectrum)
    return estimate_corr(op, cfg, spectrum, alloc).value


class TestDerivativeConsistency:
    @pytest.mark.parametrize("r", [0.5, 1.0, 1.5])
    @pytest.mark.parametrize("eta_db", ETA_DB_GRID)
    def test_uncorrelated(self, r, eta_db, cfg22):
        op = OperatingPoint(eta=db_to_linear(eta_db), r=r)
        alloc, _ = optimize_allocation(op, cfg22)
        analytic = estimate_uncorr(op, cfg22, alloc).value
        numeric = numerical_diversity(
            lambda eta: lower_bound_uncorr(OperatingPoint(eta=eta, r=r), cfg22, alloc), op.eta
        )
        assert analytic == pytest.approx(numeric, rel=1e-3)

    @pytest.mark.parametrize("rho", [0.5, 0.9])
    @pytest.mark.parametrize("r", [0.5, 1.0, 1.5])
    @pytest.mark.parametrize("eta_db", ETA_DB_GRID)
    def test_correlated(self, rho, r, eta_db, cfg22):
        spectrum = spectrum_for(rho)
        op = OperatingPoint(eta=db_to_linear(eta_db), r=r)
        alloc, _ = optimize_allocation(op, cfg22, spectrum)
        analytic = estimate_corr(op, cfg22, spectrum, alloc).value
        numeric = numerical_diversity(
            lambda eta: lower_bound_corr(OperatingPoint(eta=eta, r=r), cfg22, spectrum, alloc), op.eta
        )
        assert analytic == pytest.approx(numeric, rel=1e-3)

    def test_siso_matches_closed_form(self, cfg11):
        op = OperatingPoint(eta=10.0, r=0.5)
        analytic = estimate_uncorr(op, cfg11, Allocation(b=(0.5,))).value
        numeric = numerical_diversity(lambda eta: siso_outage(OperatingPoint(eta=eta, r=0.5)), 10.0, rel_step=1e-2)
        assert numeric == pytest.approx(analytic, rel=1e-2)

    def test_central_difference_is_second_order(self, cfg11):
        op = OperatingPoint(eta=10.0, r=0.5)
        exact = estimate_uncorr(op, cfg11, Allocation(b=(0.5,))).value

        def outage(eta: float) -> float:
            return siso_outage(OperatingPoint(eta=eta, r=0.5))

        def error(step: float) -> float:
            return abs(numerical_diversity(outage, 10.0, rel_step=step) - exact)

        assert error(1e-3) < error(1e-2) / 50.0


class TestEstimates:
    def test_zero_rate_points_to_dmax(self, cfg22):
        with pytest.raises(InvalidParameterError, match="d_max"):
            estimate_uncorr(OperatingPoint(eta=10.0, r=0.0), cfg22, Allocation(b=(0.0, 0.0)))

    @pytest.mark.parametrize("rho", [0.0, 0.5, 0.9])
    def test_small_rate_limit_is_dmax(self, rho, cfg22):
        r = 1e-4
        op = OperatingPoint(eta=db_to_linear(10.0), r=r)
        alloc = Allocation(b=(r / 2.0, r / 2.0))
        value = estimate_corr(op, cfg22, spectrum_for(rho), alloc).value
        assert value == pytest.approx(d_max(op.eta, cfg22), rel=1e-2)

    def test_zero_branch_uses_limit(self, cfg22):
        op = OperatingPoint(eta=10.0, r=1e-3)
        with_zero = estimate_uncorr(op, cfg22, Allocation(b=(1e-3, 0.0))).value
        tiny = estimate_uncorr(op, cfg22, Allocation(b=(1e-3 - 1e-12, 1e-12))).value
        assert with_zero == pytest.approx(tiny, rel=1e-6)

    @pytest.mark.parametrize("eta_db", [0.0, 5.0])
    def test_negative_estimate_is_not_clamped(self, eta_db, cfg22, spectrum_09):
        op = OperatingPoint(eta=db_to_linear(eta_db), r=1.5)
        alloc, _ = optimize_allocation(op, cfg22, spectrum_09)
        assert alloc.b[0] > 1.0
        analytic = estimate_corr(op, cfg22, spectrum_09, alloc).value
        numeric = numerical_diversity(
            lambda eta: lower_bound_corr(OperatingPoint(eta=eta, r=1.5), cfg22, spectrum_09, alloc), op.eta
        )
        assert analytic == pytest.approx(numeric, rel=1e-3)
        if eta_db == 0.0:
            assert analytic < 0.0

    def test_near_uncorrelated_continuity(self, cfg22):
        op = OperatingPoint(eta=db_to_linear(10.0), r=1.0)
        alloc = Allocation(b=(0.45, 0.55))
        near = estimate_corr(op, cfg22, EigenSpectrum(d_sq=(1.0 + 1e-4, 1.0 - 1e-4)), alloc).value
        assert near == pytest.approx(estimate_uncorr(op, cfg22, alloc).value, rel=1e-3)

    def test_uncorrelated_spectrum_routes(self, cfg22):
        op = OperatingPoint(eta=10.0, r=1.0)
        alloc = Allocation(b=(0.5, 0.5))
        assert estimate_corr(op, cfg22, EigenSpectrum.uncorrelated(2), alloc) == estimate_uncorr(op, cfg22, alloc)

    def test_strong_correlation_degrades_diversity(self, cfg22, spectrum_09):
        op = OperatingPoint(eta=db_to_linear(15.0), r=1.0)
        assert _optimized_corr(op, cfg22, spectrum_09) < _optimized_uncorr(op, cfg22)

    @pytest.mark.parametrize("r", make_grid(0.2, 1.8, 0.2))
    def test_curves_ordered_by_correlation(self, r, cfg22):
        op = OperatingPoint(eta=db_to_linear(15.0), r=r)
        strong, mild, none = (_optimized_corr(op, cfg22, spectrum_for(rho)) for rho in (0.9, 0.5, 0.0))
        assert strong < mild < none

    def test_high_snr_close_to_asymptote(self, cfg22):
        value = _optimized_uncorr(OperatingPoint(eta=1e8, r=1.0), cfg22)
        assert value == pytest.approx(d_asym(1.0, cfg22), rel=0.15)

    @pytest.mark.parametrize("r", [0.5, 1.0, 1.5])
    def test_converges_to_asymptote(self, r, cfg22):
        gaps = [abs(_optimized_uncorr(OperatingPoint(eta=db_to_linear(e), r=r), cfg22) - d_asym(r, cfg22)) for e in HIGH_SNR_DB]
        assert all(a > b for a, b in zip(gaps, gaps[1:]))

    def test_correlated_gap_closes_at_high_snr(self, cfg22, spectrum_09):
        gaps = []
        for eta_db in HIGH_SNR_DB:
            op = OperatingPoint(eta=db_to_linear(eta_db), r=0.5)
            uncorr = _optimized_uncorr(op, cfg22)
            gaps.append(abs(_optimized_corr(op, cfg22, spectrum_09) - uncorr) / uncorr)
        assert all(a > b for a, b in zip(gaps, gaps[1:]))

    def test_asymptotic_estimate(self, cfg22):
        assert asymptotic_estimate(Allocation(b=(0.5, 0.5)), cfg22) == pytest.approx(2.0)
        assert asymptotic_estimate(Allocation(b=(1.5, 0.5)), cfg22) == pytest.approx(0.5)


class TestMaxDiversity:
    def test_direct_value(self, cfg22):
        expected = 4.0 * (1.0 - 20.0 / (21.0 * math.log(21.0)))
        assert d_max(10.0, cfg22) == pytest.approx(expected, rel=1e-12)
        assert d_max(10.0, cfg22) == pytest.approx(2.7487, abs=1e-4)

    def test_low_snr(self, cfg22):
        assert d_max(1e-6, cfg22) == pytest.approx(0.0, abs=1e-3)

    def test_high_snr(self, cfg22):
        # convergence in 1/ln(eta) is slow: 3.86 at 1e12
        assert 3.8 < d_max(1e12, cfg22) < 4.0
        assert d_max(1e40, cfg22) == pytest.approx(4.0, abs=0.1)

    def test_increasing(self, cfg22):
        values = [d_max(db_to_linear(e), cfg22) for e in range(-10, 60, 5)]
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_invalid_eta(self, cfg22):
        with pytest.raises(InvalidParameterError):
            d_max(0.0, cfg22)


class TestAsymptoticTradeoff:
    @pytest.mark.parametrize("r, expected", [(0.0, 4.0), (0.5, 2.5), (1.0, 1.0), (1.5, 0.5), (2.0, 0.0)])
    def test_two_by_two(self, r, expected, cfg22):
        assert d_asym(r, cfg22) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("n_t, n_r", [(1, 3), (2, 3), (3, 2), (3, 3), (4, 4), (2, 4)])
    def test_integer_points(self, n_t, n_r):
        cfg = AntennaConfig(n_t=n_t, n_r=n_r)
        for k in range(cfg.t + 1):
            assert d_asym(float(k), cfg) == pytest.approx((n_t - k) * (n_r - k), abs=1e-12)

    @pytest.mark.parametrize("n_t, n_r", [(1, 1), (1, 2), (2, 2), (2, 3), (3, 2), (3, 3), (3, 4)])
    def test_matches_exhaustive_minimization(self, n_t, n_r):
        cfg = AntennaConfig(n_t=n_t, n_r=n_r)
        for r in make_grid(0.0, float(cfg.t), 0.1):
            r = min(r, float(cfg.t))
            greedy = d_asym(r, cfg)
            assert greedy == pytest.approx(d_asym_bruteforce(r, cfg, resolution=0.1), abs=1e-9)
            assert greedy == pytest.approx(d_asym_lp(r, cfg), abs=1e-7)

    @pytest.mark.parametrize("r", [-0.1, 2.1])
    def test_out_of_range(self, r, cfg22):
        with pytest.raises(InvalidParameterError):
            d_asym(r, cfg22)


class TestAsymptoticTerms:
    def test_unit_rate_branch(self, cfg22):
        terms = asymptotic_terms(OperatingPoint(eta=100.0, r=1.5), cfg22, None, Allocation(b=(1.0, 0.5)))
        assert terms.k_l[0] == 0.0
        assert terms.branches[0].case == "at"
        assert terms.branches[0].xi == 4.0
        assert terms.branches[1].case == "below"

    def test_small_xi_approximation(self, cfg22, spectrum_09):
        op = OperatingPoint(eta=1e6, r=1.0)
        alloc = Allocation(b=(0.1, 0.9))
        uncorr = asymptotic_terms(op, cfg22, None, alloc).branches[0]
        corr = asymptotic_terms(op, cfg22, spectrum_09, alloc).branches[0]
        assert uncorr.j == pytest.approx(uncorr.j_approx, rel=0.02)
        assert corr.q_over_p == pytest.approx(uncorr.j_approx, rel=0.02)

    def test_above_case(self, cfg22):
        terms = asymptotic_terms(OperatingPoint(eta=1e6, r=1.5), cfg22, None, Allocation(b=(1.2, 0.3)))
        above = terms.branches[0]
        assert above.case == "above"
        assert above.k < 0.0
        assert above.xi == pytest.approx(above.xi_approx, rel=1e-3)


class TestRelativeGain:
    def test_uncorrelated_is_one(self, cfg22):
        assert relative_gain(1.0, 10.0, cfg22, EigenSpectrum.uncorrelated(2)) == 1.0

    @pytest.mark.parametrize("rho", [0.5, 0.9])
    @pytest.mark.parametrize("r", [0.5, 1.0])
    @pytest.mark.parametrize("eta_db", [5.0, 10.0, 15.0])
    def test_at_most_one_at_finite_snr(self, rho, r, eta_db, cfg22):
        assert relative_gain(r, db_to_linear(eta_db), cfg22, spectrum_for(rho)) <= 1.0

    def test_approaches_one(self, cfg22, spectrum_09):
        low = relative_gain(0.5, db_to_linear(10.0), cfg22, spectrum_09)
        high = relative_gain(0.5, db_to_linear(40.0), cfg22, spectrum_09)
        assert abs(high - 1.0) < abs(low - 1.0)

    def test_zero_rate(self, cfg22, spectrum_05):
        with pytest.raises(InvalidParameterError):
            relative_gain(0.0, 10.0, cfg22, spectrum_05)


class TestTradeoffCurve:
    def test_asymptotic(self, cfg22):
        curve = tradeoff_curve("asymptotic", [0.0, 0.5, 1.0, 1.5, 2.0], cfg22)
        assert curve.d_values == pytest.approx([4.0, 2.5, 1.0, 0.5, 0.0])

    def test_estimate_starts_at_dmax(self, cfg22, spectrum_05):
        eta = db_to_linear(15.0)
        curve = tradeoff_curve("estimate-corr", [0.0, 0.5, 1.0], cfg22, eta=eta, spectrum=spectrum_05)
        assert curve.r_values == [0.0, 0.5, 1.0]
        assert curve.d_values[0] == pytest.approx(d_max(eta, cfg22))
        assert curve.d_values[0] > curve.d_values[1] > curve.d_values[2]

    def test_estimate_needs_eta(self, cfg22):
        with pytest.raises(InvalidParameterError):
            tradeoff_curve("estimate-uncorr", [0.5], cfg22)

    def test_monte_carlo(self, cfg22):
        eta = db_to_linear(10.0)
        curve = tradeoff_curve(
            "monte-carlo", [0.0, 1.0], cfg22, eta=eta, r_t=identity_correlation(2), mc=McConfig(n_samples=50_000)
        )
        assert curve.kind == "monte-carlo"
        assert curve.d_values[0] == pytest.approx(d_max(eta, cfg22))
        assert math.isfinite(curve.d_values[1])

    def test_monte_carlo_needs_settings(self, cfg22):
        with pytest.raises(InvalidParameterError, match="Monte Carlo"):
            tradeoff_curve("monte-carlo", [1.0], cfg22, eta=10.0)
