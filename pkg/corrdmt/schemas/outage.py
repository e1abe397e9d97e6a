"""Operating point, rate allocation and outage estimate schemas."""

import math
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

ALLOCATION_TOL = 1e-10


class OperatingPoint(BaseModel):
    """Mean SNR (linear, per receive antenna) and multiplexing gain."""

    model_config = ConfigDict(frozen=True)

    eta: float = Field(..., gt=0.0, description="Linear mean SNR per receive antenna")
    r: float = Field(..., ge=0.0, description="Multiplexing gain")

    @field_validator("eta")
    @classmethod
    def _finite_eta(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("eta must be finite")
        return value

    def rate(self, g: int) -> float:
        """Spectral efficiency R = r * log2(1 + g*eta) in bps/Hz."""
        return self.r * math.log2(1.0 + g * self.eta)


class Allocation(BaseModel):
    """Split b_1..b_t of the multiplexing gain across spatial branches."""

    model_config = ConfigDict(frozen=True)

    b: tuple[float, ...] = Field(..., min_length=1, description="Nonnegative per-branch gains")

    @field_validator("b")
    @classmethod
    def _nonnegative(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if any(v < 0.0 or not math.isfinite(v) for v in value):
            raise ValueError(f"allocation entries must be finite and >= 0, got {value}")
        return value

    @property
    def r(self) -> float:
        return math.fsum(self.b)

    def check_against(self, r: float, t: int) -> None:
        """Raise ValueError unless the allocation has t entries summing to r."""
        if len(self.b) != t:
            raise ValueError(f"allocation has {len(self.b)} entries, expected t = {t}")
        if abs(self.r - r) > ALLOCATION_TOL * max(1.0, r):
            raise ValueError(f"allocation sums to {self.r}, expected r = {r}")


class OutageEstimate(BaseModel):
    """Outage probability with provenance (analytic bound or simulation)."""

    value: float = Field(..., ge=0.0, le=1.0)
    kind: Literal["lower-bound", "monte-carlo"]
    stderr: float = Field(0.0, ge=0.0)
    allocation: Optional[Allocation] = None

    @model_validator(mode="after")
    def _bounds_have_no_stderr(self) -> "OutageEstimate":
        if self.kind == "lower-bound" and self.stderr != 0.0:
            raise ValueError("lower-bound estimates carry stderr 0")
        return self
