"""Diversity estimate and tradeoff curve schemas."""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .outage import Allocation

CurveKind = Literal["estimate-uncorr", "estimate-corr", "asymptotic", "monte-carlo"]
BranchCase = Literal["above", "below", "at"]


class DiversityEstimate(BaseModel):
    """Finite-SNR diversity estimate at one (r, eta)."""

    value: float = Field(..., description="-eta d ln(bound)/d eta at fixed b; negative when a b_l > 1 dominates")
    r: float
    eta: float = Field(..., gt=0.0)
    flavor: Literal["uncorrelated", "correlated"]
    allocation: Allocation


class BranchAsymptotics(BaseModel):
    """High-SNR diagnostics of one branch l."""

    l: int = Field(..., ge=1)
    b: float
    case: BranchCase = Field(..., description="b_l above, below or at 1")
    xi: float
    xi_approx: float = Field(..., description="N_t g^b eta^(b-1)")
    j: Optional[float] = Field(None, description="Density/cdf ratio of the uncorrelated branch")
    k: float = Field(..., description="(1+g eta)^b - b g eta (1+g eta)^(b-1) - 1")
    q_over_p: Optional[float] = Field(None, description="Density/cdf ratio of the correlated branch")
    j_approx: Optional[float] = Field(None, description="(N_t+N_r-2l+1)/xi, small-xi limit")


class AsymptoticTerms(BaseModel):
    """Per-branch asymptotic diagnostics at one operating point."""

    branches: list[BranchAsymptotics]

    @property
    def j_l(self) -> list[Optional[float]]:
        return [b.j for b in self.branches]

    @property
    def k_l(self) -> list[float]:
        return [b.k for b in self.branches]

    @property
    def q_over_p(self) -> list[Optional[float]]:
        return [b.q_over_p for b in self.branches]


class DMTCurve(BaseModel):
    """Ordered (r, d) points of one tradeoff curve."""

    model_config = ConfigDict(frozen=True)

    kind: CurveKind
    points: tuple[tuple[float, float], ...]
    eta: Optional[float] = Field(None, description="Linear SNR, None for the asymptotic curve")

    @field_validator("points")
    @classmethod
    def _strictly_increasing(cls, value: tuple[tuple[float, float], ...]) -> tuple[tuple[float, float], ...]:
        rs = [p[0] for p in value]
        if any(a >= b for a, b in zip(rs, rs[1:])):
            raise ValueError("curve r values must be strictly increasing")
        return value

    @property
    def r_values(self) -> list[float]:
        return [p[0] for p in self.points]

    @property
    def d_values(self) -> list[float]:
        return [p[1] for p in self.points]
