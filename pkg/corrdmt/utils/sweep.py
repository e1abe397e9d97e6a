"""Concurrent evaluation of a SweepSpec over its (quantity, rho, r, eta) grid.

Grid points fan out to worker threads bounded by a semaphore and fan back in
with asyncio.gather; records are then sorted so the output does not depend on
completion order.
"""

import asyncio
import logging
from dataclasses import dataclass
from typing import Optional

from ..core.errors import InvalidParameterError
from ..engine.channel import build_single_coeff_correlation, eigen_spectrum
from ..engine.diversity import d_asym, d_max, estimate_corr, estimate_uncorr, relative_gain
from ..engine.montecarlo import diversity_fd, outage_mc
from ..engine.outage import optimize_allocation
from ..infrastructure.corr_file import read_correlation_file
from ..infrastructure.tracing import get_tracer
from ..schemas.channel import CorrelationMatrix, EigenSpectrum
from ..schemas.outage import OperatingPoint
from ..schemas.sweep import ETA_FREE_QUANTITIES, R_FREE_QUANTITIES, CurveRecord, Quantity, SweepSpec
from .grid import db_to_linear

logger = logging.getLogger(__name__)
tracer = get_tracer(__name__)

# Quantities that do not depend on the correlation source
RHO_FREE_QUANTITIES = {"d-max", "d-asym"}


@dataclass(frozen=True)
class CorrelationSource:
    """Transmit correlation for one sweep slice (rho is None for file input)."""

    rho: Optional[float]
    r_t: CorrelationMatrix
    spectrum: EigenSpectrum


@dataclass(frozen=True)
class GridPoint:
    quantity: Quantity
    source: Optional[CorrelationSource]
    r: Optional[float]
    eta_db: Optional[float]


def build_sources(spec: SweepSpec) -> list[CorrelationSource]:
    """Correlation sources from the rho list or the correlation file (rho = 0 by default)."""
    n_t = spec.antennas.n_t
    if spec.corr_file is not None:
        r_t = read_correlation_file(spec.corr_file)
        if r_t.dim != n_t:
            raise InvalidParameterError(f"correlation file is {r_t.dim}x{r_t.dim}, expected n_t = {n_t}")
        return [CorrelationSource(rho=None, r_t=r_t, spectrum=eigen_spectrum(r_t))]
    sources = []
    for rho in spec.rho_values or [0.0]:
        r_t = build_single_coeff_correlation(rho, n_t)
        sources.append(CorrelationSource(rho=rho, r_t=r_t, spectrum=eigen_spectrum(r_t)))
    return sources


def grid_points(spec: SweepSpec, sources: list[CorrelationSource]) -> list[GridPoint]:
    """One point per (quantity, source, r, eta), collapsing axes a quantity ignores."""
    points = []
    for quantity in spec.quantities:
        q_sources = [None] if quantity in RHO_FREE_QUANTITIES else sources
        r_values = [None] if quantity in R_FREE_QUANTITIES else spec.r_values
        eta_values = [None] if quantity in ETA_FREE_QUANTITIES else spec.eta_db_values
        for source in q_sources:
            for r in r_values:
                for eta_db in eta_values:
                    points.append(GridPoint(quantity, source, r, eta_db))
    return points


def _uncorr_label(quantity: Quantity, source: CorrelationSource) -> Quantity:
    if source.spectrum.is_uncorrelated and quantity.endswith("-corr"):
        return quantity.removesuffix("-corr") + "-uncorr"
    return quantity


def evaluate_point(spec: SweepSpec, point: GridPoint) -> CurveRecord:
    """Evaluate one quantity at one grid point."""
    cfg = spec.antennas
    q, source, r = point.quantity, point.source, point.r
    rho = source.rho if source is not None else None

    if q == "d-asym":
        return CurveRecord(quantity=q, r=r, value=d_asym(r, cfg))
    eta = db_to_linear(point.eta_db)
    if q == "d-max":
        return CurveRecord(quantity=q, eta_db=point.eta_db, value=d_max(eta, cfg))

    op = OperatingPoint(eta=eta, r=r)
    base = {"r": r, "eta_db": point.eta_db, "rho": rho}

    if q in ("bound-uncorr", "bound-corr"):
        label = _uncorr_label(q, source)
        spectrum = None if label == "bound-uncorr" else source.spectrum
        alloc, value = optimize_allocation(op, cfg, spectrum)
        return CurveRecord(quantity=label, value=value, b=alloc.b, **base)

    if q in ("div-est-uncorr", "div-est-corr"):
        label = _uncorr_label(q, source)
        if r == 0.0:
            return CurveRecord(quantity=label, value=d_max(eta, cfg), **base)
        if label == "div-est-uncorr":
            alloc, _ = optimize_allocation(op, cfg, None)
            estimate = estimate_uncorr(op, cfg, alloc)
        else:
            alloc, _ = optimize_allocation(op, cfg, source.spectrum)
            estimate = estimate_corr(op, cfg, source.spectrum, alloc)
        return CurveRecord(quantity=label, value=estimate.value, b=alloc.b, **base)

    if q == "relative-gain":
        # both estimates tend to d_max as r -> 0
        value = 1.0 if r == 0.0 else relative_gain(r, eta, cfg, source.spectrum)
        return CurveRecord(quantity=q, value=value, **base)

    if q == "mc-outage":
        result = outage_mc(op, cfg, source.r_t, spec.mc)
        return CurveRecord(quantity=q, value=result.p_out, stderr=result.stderr, **base)

    if q == "div-fd":
        result = diversity_fd(op, cfg, source.r_t, spec.mc, spec.rel_step)
        return CurveRecord(quantity=q, value=result.value, stderr=result.stderr, **base)

    raise InvalidParameterError(f"Unknown quantity: '{q}'")


async def _run_async(spec: SweepSpec, points: list[GridPoint]) -> list[CurveRecord]:
    semaphore = asyncio.Semaphore(spec.threads)

    def run_single(point: GridPoint) -> CurveRecord:
        with tracer.start_as_current_span("grid_point") as span:
            span.set_attribute("quantity", point.quantity)
            for key, value in (("r", point.r), ("eta_db", point.eta_db)):
                if value is not None:
                    span.set_attribute(key, value)
            if point.source is not None and point.source.rho is not None:
                span.set_attribute("rho", point.source.rho)
            return evaluate_point(spec, point)

    async def bounded(point: GridPoint) -> CurveRecord:
        async with semaphore:
            return await asyncio.to_thread(run_single, point)

    return list(await asyncio.gather(*[bounded(p) for p in points]))


def run_sweep(spec: SweepSpec) -> list[CurveRecord]:
    """Evaluate every grid point and return records in (quantity, rho, r, eta) order.

    Raises:
        InvalidParameterError: On invalid grids or correlation input
        NumericalFailureError: If a bound or estimate cannot be computed
        InsufficientSamplesError: If a finite difference sees no outage events
    """
    points = grid_points(spec, build_sources(spec))
    logger.info(f"Evaluating {len(points)} grid points on {spec.threads} worker(s)")
    records = asyncio.run(_run_async(spec, points))
    return sorted(records, key=CurveRecord.sort_key)
