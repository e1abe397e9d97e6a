"""Shared fixtures for the test suite."""

import os

import numpy as np
import pytest

from corrdmt.config import get_settings
from corrdmt.engine.channel import build_single_coeff_correlation, eigen_spectrum
from corrdmt.schemas import AntennaConfig, EigenSpectrum


@pytest.fixture
def cfg22() -> AntennaConfig:
    return AntennaConfig(n_t=2, n_r=2)


@pytest.fixture
def cfg11() -> AntennaConfig:
    return AntennaConfig(n_t=1, n_r=1)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(42)


def spectrum_for(rho: float, n_t: int = 2) -> EigenSpectrum:
    return eigen_spectrum(build_single_coeff_correlation(rho, n_t))


@pytest.fixture
def spectrum_05() -> EigenSpectrum:
    return spectrum_for(0.5)


@pytest.fixture
def spectrum_09() -> EigenSpectrum:
    return spectrum_for(0.9)


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch):
    """Isolate tests from CORRDMT_* variables of the calling shell."""
    for key in list(os.environ):
        if key.startswith("CORRDMT_"):
            monkeypatch.delenv(key)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
