"""Typed records shared by the engine and the CLI."""

from .channel import AntennaConfig, ChannelMatrix, CorrelationMatrix, EigenSpectrum
from .diversity import AsymptoticTerms, BranchAsymptotics, DiversityEstimate, DMTCurve
from .montecarlo import McConfig, McDiversity, McResult
from .outage import Allocation, OperatingPoint, OutageEstimate
from .quadform import GammaMixture, GammaTerm, MgfSpec
from .sweep import CurveRecord, Quantity, SweepSpec

__all__ = [
    # Channel
    "AntennaConfig",
    "ChannelMatrix",
    "CorrelationMatrix",
    "EigenSpectrum",
    # Quadratic forms
    "GammaMixture",
    "GammaTerm",
    "MgfSpec",
    # Outage
    "Allocation",
    "OperatingPoint",
    "OutageEstimate",
    # Diversity
    "AsymptoticTerms",
    "BranchAsymptotics",
    "DiversityEstimate",
    "DMTCurve",
    # Monte Carlo
    "McConfig",
    "McDiversity",
    "McResult",
    # Sweeps
    "CurveRecord",
    "Quantity",
    "SweepSpec",
]
