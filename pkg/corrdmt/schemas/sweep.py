"""Sweep definition and curve record schemas used by the CLI."""

from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

from .channel import AntennaConfig
from .montecarlo import McConfig

Quantity = Literal[
    "bound-uncorr",
    "bound-corr",
    "mc-outage",
    "div-est-uncorr",
    "div-est-corr",
    "div-fd",
    "d-max",
    "d-asym",
    "relative-gain",
]

# Quantities evaluated without an r grid / without an SNR grid
R_FREE_QUANTITIES = {"d-max"}
ETA_FREE_QUANTITIES = {"d-asym"}


class SweepSpec(BaseModel):
    """Grid of operating points and the quantities to evaluate on it."""

    antennas: AntennaConfig
    rho_values: list[float] = Field(default_factory=list, description="Single-coefficient correlation values")
    corr_file: Optional[Path] = Field(None, description="Explicit transmit correlation matrix file")
    r_values: list[float] = Field(default_factory=list)
    eta_db_values: list[float] = Field(default_factory=list)
    quantities: list[Quantity] = Field(..., min_length=1)
    mc: Optional[McConfig] = None
    rel_step: float = Field(1e-2, gt=0.0, lt=1.0)
    threads: int = Field(1, ge=1)

    @model_validator(mode="after")
    def _check_grids(self) -> "SweepSpec":
        needs_r = any(q not in R_FREE_QUANTITIES for q in self.quantities)
        needs_eta = any(q not in ETA_FREE_QUANTITIES for q in self.quantities)
        if needs_r and not self.r_values:
            raise ValueError("r grid is empty")
        if needs_eta and not self.eta_db_values:
            raise ValueError("SNR grid is empty")
        t = self.antennas.t
        for r in self.r_values:
            if not 0.0 <= r <= t:
                raise ValueError(f"multiplexing gain {r} outside [0, {t}]")
        if self.rho_values and self.corr_file is not None:
            raise ValueError("give either rho values or a correlation file, not both")
        if any(q in {"mc-outage", "div-fd"} for q in self.quantities) and self.mc is None:
            raise ValueError("Monte Carlo quantities need Monte Carlo settings")
        return self


class CurveRecord(BaseModel):
    """One evaluated quantity at one grid point."""

    quantity: Quantity
    r: Optional[float] = None
    eta_db: Optional[float] = None
    rho: Optional[float] = None
    value: float
    stderr: float = Field(0.0, ge=0.0)
    b: Optional[tuple[float, ...]] = Field(None, description="Maximizing allocation, when applicable")

    def sort_key(self) -> tuple:
        """Deterministic emission order: (quantity, rho, r, eta)."""

        def _opt(x: Optional[float]) -> tuple[bool, float]:
            return (x is None, x if x is not None else 0.0)

        return (self.quantity, _opt(self.rho), _opt(self.r), _opt(self.eta_db))
