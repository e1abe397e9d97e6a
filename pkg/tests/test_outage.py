"""Tests for the outage lower bounds and the rate-split optimizer."""

import math

import numpy as np
import pytest

from corrdmt.core.errors import InvalidParameterError
from corrdmt.engine.channel import build_single_coeff_correlation
from corrdmt.engine.montecarlo import outage_mc
from corrdmt.engine.outage import (
    log_lower_bound,
    lower_bound,
    lower_bound_corr,
    lower_bound_uncorr,
    optimize_allocation,
    siso_outage,
    xi,
)
from corrdmt.schemas import Allocation, AntennaConfig, EigenSpectrum, McConfig, OperatingPoint
from corrdmt.utils.grid import db_to_linear, make_grid

from .conftest import spectrum_for


class TestXi:
    def test_zero_rate(self, cfg22):
        assert xi(0.0, OperatingPoint(eta=10.0, r=1.0), cfg22) == 0.0

    @pytest.mark.parametrize("eta", [0.1, 10.0, 1e8])
    def test_unit_rate_is_exact(self, eta, cfg22):
        assert xi(1.0, OperatingPoint(eta=eta, r=1.0), cfg22) == 4.0

    def test_direct_value(self, cfg22):
        value = xi(0.5, OperatingPoint(eta=100.0, r=1.0), cfg22)
        assert value == pytest.approx(2.0 / 100.0 * (math.sqrt(201.0) - 1.0), rel=1e-12)
        assert value == pytest.approx(0.26355, abs=1e-5)

    def test_negative_rate(self, cfg22):
        with pytest.raises(InvalidParameterError):
            xi(-0.1, OperatingPoint(eta=1.0, r=1.0), cfg22)


class TestUncorrelatedBound:
    def test_zero_rate(self, cfg22):
        op = OperatingPoint(eta=10.0, r=0.0)
        assert lower_bound_uncorr(op, cfg22, Allocation(b=(0.0, 0.0))) == 0.0

    @pytest.mark.parametrize("r", [0.25, 0.5, 0.75])
    @pytest.mark.parametrize("eta", [1.0, 10.0, 100.0])
    def test_siso_is_exact(self, r, eta, cfg11):
        op = OperatingPoint(eta=eta, r=r)
        expected = 1.0 - math.exp(-((1.0 + eta) ** r - 1.0) / eta)
        assert lower_bound_uncorr(op, cfg11, Allocation(b=(r,))) == pytest.approx(expected, abs=1e-10)
        assert siso_outage(op) == pytest.approx(expected, abs=1e-12)

    def test_value_in_unit_interval(self, cfg22):
        op = OperatingPoint(eta=db_to_linear(10.0), r=1.0)
        value = lower_bound_uncorr(op, cfg22, Allocation(b=(0.5, 0.5)))
        assert 0.0 < value < 1.0

    def test_rejects_mismatched_allocation(self, cfg22):
        op = OperatingPoint(eta=10.0, r=1.0)
        with pytest.raises(InvalidParameterError, match="sums to"):
            lower_bound_uncorr(op, cfg22, Allocation(b=(0.5, 0.6)))
        with pytest.raises(InvalidParameterError, match="entries"):
            lower_bound_uncorr(op, cfg22, Allocation(b=(1.0,)))

    def test_rejects_rate_above_t(self, cfg22):
        with pytest.raises(InvalidParameterError, match="exceeds"):
            lower_bound_uncorr(OperatingPoint(eta=10.0, r=2.5), cfg22, Allocation(b=(1.25, 1.25)))


class TestCorrelatedBound:
    def test_uncorrelated_spectrum_routes(self, cfg22):
        op = OperatingPoint(eta=10.0, r=1.0)
        alloc = Allocation(b=(0.3, 0.7))
        assert lower_bound_corr(op, cfg22, EigenSpectrum.uncorrelated(2), alloc) == lower_bound_uncorr(
            op, cfg22, alloc
        )

    def test_zero_rate(self, cfg22, spectrum_09):
        assert lower_bound_corr(OperatingPoint(eta=10.0, r=0.0), cfg22, spectrum_09, Allocation(b=(0.0, 0.0))) == 0.0

    def test_near_uncorrelated_is_continuous(self, cfg22):
        op = OperatingPoint(eta=10.0, r=1.0)
        alloc = Allocation(b=(0.5, 0.5))
        near = lower_bound_corr(op, cfg22, spectrum_for(1e-4), alloc)
        assert near == pytest.approx(lower_bound_uncorr(op, cfg22, alloc), rel=1e-3)

    def test_correlation_raises_bound(self, cfg22, spectrum_09):
        op = OperatingPoint(eta=db_to_linear(15.0), r=1.0)
        _, corr = optimize_allocation(op, cfg22, spectrum_09)
        _, uncorr = optimize_allocation(op, cfg22, None)
        assert corr >= uncorr

    def test_rank_deficient(self, cfg22):
        with pytest.raises(InvalidParameterError, match="full rank"):
            lower_bound_corr(OperatingPoint(eta=10.0, r=1.0), cfg22, EigenSpectrum(d_sq=(2.0, 0.0)), Allocation(b=(0.5, 0.5)))

    def test_lower_bound_wraps_provenance(self, cfg22, spectrum_05):
        op = OperatingPoint(eta=10.0, r=1.0)
        alloc = Allocation(b=(0.5, 0.5))
        estimate = lower_bound(op, cfg22, spectrum_05, alloc)
        assert estimate.kind == "lower-bound"
        assert estimate.stderr == 0.0
        assert estimate.value == pytest.approx(lower_bound_corr(op, cfg22, spectrum_05, alloc))

    def test_log_bound_matches(self, cfg22, spectrum_05):
        op = OperatingPoint(eta=10.0, r=1.0)
        b = (0.4, 0.6)
        value = lower_bound_corr(op, cfg22, spectrum_05, Allocation(b=b))
        assert log_lower_bound(op, cfg22, spectrum_05, b) == pytest.approx(math.log(value), rel=1e-12)


class TestOptimizer:
    def test_single_branch(self):
        cfg = AntennaConfig(n_t=1, n_r=3)
        alloc, value = optimize_allocation(OperatingPoint(eta=10.0, r=0.7), cfg)
        assert alloc.b == (0.7,)
        assert value == pytest.approx(lower_bound_uncorr(OperatingPoint(eta=10.0, r=0.7), cfg, alloc))

    def test_zero_rate(self, cfg22):
        alloc, value = optimize_allocation(OperatingPoint(eta=10.0, r=0.0), cfg22)
        assert alloc.b == (0.0, 0.0)
        assert value == 0.0

    def test_dominates_uniform_split(self, cfg22):
        op = OperatingPoint(eta=db_to_linear(10.0), r=1.0)
        alloc, value = optimize_allocation(op, cfg22)
        assert value >= lower_bound_uncorr(op, cfg22, Allocation(b=(0.5, 0.5)))
        assert alloc.r == pytest.approx(1.0, abs=1e-10)
        assert value == pytest.approx(lower_bound_uncorr(op, cfg22, alloc), rel=1e-12)

    def test_dominates_grid_for_correlated(self, cfg22, spectrum_09):
        op = OperatingPoint(eta=db_to_linear(10.0), r=1.5)
        _, value = optimize_allocation(op, cfg22, spectrum_09)
        for b1 in np.linspace(0.0, 1.5, 31):
            alloc = Allocation(b=(float(b1), 1.5 - float(b1)))
            assert value >= lower_bound_corr(op, cfg22, spectrum_09, alloc) * (1.0 - 1e-6)

    def test_deterministic(self, cfg22, spectrum_05):
        op = OperatingPoint(eta=db_to_linear(5.0), r=1.2)
        assert optimize_allocation(op, cfg22, spectrum_05) == optimize_allocation(op, cfg22, spectrum_05)

    def test_three_branches(self):
        cfg = AntennaConfig(n_t=3, n_r=3)
        op = OperatingPoint(eta=db_to_linear(10.0), r=1.5)
        alloc, value = optimize_allocation(op, cfg)
        assert len(alloc.b) == 3
        assert alloc.r == pytest.approx(1.5, abs=1e-10)
        assert value >= lower_bound_uncorr(op, cfg, Allocation(b=(0.5, 0.5, 0.5)))


class TestMonotonicity:
    @pytest.mark.parametrize("rho", [0.0, 0.5, 0.9])
    def test_nondecreasing_in_rate(self, rho, cfg22):
        eta = db_to_linear(10.0)
        spectrum = spectrum_for(rho)
        values = [optimize_allocation(OperatingPoint(eta=eta, r=r), cfg22, spectrum)[1] for r in make_grid(0.1, 1.9, 0.2)]
        assert all(later >= earlier * (1.0 - 1e-6) for earlier, later in zip(values, values[1:]))

    # with r <= 1 every b_l <= 1, so each xi_l shrinks as eta grows
    @pytest.mark.parametrize("rho", [0.0, 0.5, 0.9])
    @pytest.mark.parametrize("r", [0.5, 1.0])
    def test_nonincreasing_in_snr(self, rho, r, cfg22):
        spectrum = spectrum_for(rho)
        values = [
            optimize_allocation(OperatingPoint(eta=db_to_linear(eta_db), r=r), cfg22, spectrum)[1]
            for eta_db in make_grid(0.0, 30.0, 5.0)
        ]
        assert all(later <= earlier * (1.0 + 1e-6) for earlier, later in zip(values, values[1:]))

    def test_low_snr_bound_can_grow_above_unit_rate(self, cfg22, spectrum_09):
        low = optimize_allocation(OperatingPoint(eta=db_to_linear(0.0), r=1.5), cfg22, spectrum_09)[1]
        higher = optimize_allocation(OperatingPoint(eta=db_to_linear(1.0), r=1.5), cfg22, spectrum_09)[1]
        assert higher > low


@pytest.mark.slow
class TestBoundDomination:
    @pytest.mark.parametrize("rho", [0.0, 0.5, 0.9])
    @pytest.mark.parametrize("r", [0.5, 1.0, 1.5])
    @pytest.mark.parametrize("eta_db", [0.0, 5.0, 10.0, 15.0, 20.0])
    def test_bound_below_simulation(self, rho, r, eta_db, cfg22):
        op = OperatingPoint(eta=db_to_linear(eta_db), r=r)
        spectrum = spectrum_for(rho)
        _, bound = optimize_allocation(op, cfg22, spectrum)
        result = outage_mc(op, cfg22, build_single_coeff_correlation(rho, 2), McConfig(n_samples=1_000_000))
        assert bound <= result.p_out + 3.0 * result.stderr
