"""Tests for environment-driven settings."""

import pytest
from pydantic import ValidationError

from corrdmt.config import Settings, get_settings


class TestSettings:
    def test_defaults(self):
        settings = Settings(_env_file=None)
        assert settings.default_seed == 42
        assert settings.default_samples == 1_000_000
        assert settings.output_format == "csv"
        assert settings.tracing_backend == "disabled"

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("CORRDMT_DEFAULT_SEED", "7")
        monkeypatch.setenv("CORRDMT_TRACING_BACKEND", "console")
        settings = get_settings()
        assert settings.default_seed == 7
        assert settings.tracing_backend == "console"

    def test_cached(self):
        assert get_settings() is get_settings()

    def test_invalid_value(self, monkeypatch):
        monkeypatch.setenv("CORRDMT_DEFAULT_SAMPLES", "many")
        with pytest.raises(ValidationError):
            Settings(_env_file=None)
