"""Monte Carlo configuration and result schemas."""

import math

from pydantic import BaseModel, ConfigDict, Field, model_validator


class McConfig(BaseModel):
    """Sample budget and seeding of a Monte Carlo run."""

    model_config = ConfigDict(frozen=True)

    n_samples: int = Field(..., ge=1)
    seed: int = Field(42, ge=0, lt=2**64)
    stream_count: int = Field(8, ge=1, description="Independent random streams (parallel partitions)")
    batch_size: int = Field(200_000, ge=1, description="Channels drawn per batch inside a stream")


class McResult(BaseModel):
    """Empirical outage probability with its binomial standard error."""

    p_out: float = Field(..., ge=0.0, le=1.0)
    stderr: float = Field(..., ge=0.0)
    n_samples: int = Field(..., ge=1)
    n_outages: int = Field(..., ge=0)

    @model_validator(mode="after")
    def _binomial_stderr(self) -> "McResult":
        expected = math.sqrt(self.p_out * (1.0 - self.p_out) / self.n_samples)
        if not math.isclose(self.stderr, expected, rel_tol=1e-9, abs_tol=1e-15):
            raise ValueError(f"stderr {self.stderr} does not match binomial value {expected}")
        return self

    @classmethod
    def from_counts(cls, n_outages: int, n_samples: int) -> "McResult":
        p = n_outages / n_samples
        return cls(
            p_out=p,
            stderr=math.sqrt(p * (1.0 - p) / n_samples),
            n_samples=n_samples,
            n_outages=n_outages,
        )


class McDiversity(BaseModel):
    """Finite-difference diversity of simulated outage, with propagated error."""

    value: float
    stderr: float = Field(..., ge=0.0)
    p_minus: McResult
    p_plus: McResult
