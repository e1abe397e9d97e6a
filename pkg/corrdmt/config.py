"""Toolkit configuration using Pydantic Settings."""

from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables (prefix CORRDMT_)."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="CORRDMT_",
        extra="ignore",
    )

    # Logging
    log_level: str = "INFO"

    # Monte Carlo defaults (overridden by --seed, --samples, --streams)
    default_seed: int = 42
    default_samples: int = 1_000_000
    mc_stream_count: int = 8
    mc_batch_size: int = 200_000  # channels drawn per batch inside a stream

    # Relative step for finite-difference diversity on simulated outage
    fd_rel_step: float = 1e-2

    # Worker pool size for grid sweeps (overridden by --threads)
    default_threads: int = 4

    # Output: "csv" or "json-lines"
    output_format: str = "csv"

    # Observability settings
    tracing_backend: str = "disabled"  # "disabled", "console", "local"
    local_otlp_endpoint: str = "http://localhost:4317"


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
