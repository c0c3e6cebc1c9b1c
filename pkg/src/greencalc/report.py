"""Shared request/response path for CLI, service and library callers.

A single code path turns an :class:`EstimateRequest` into a
:class:`ReportPayload`, so all three surfaces produce bit-identical JSON
for identical inputs. The payload itself is never rounded; display
rounding (nearest integer half-away-from-zero for gCO2e/km/tree-months,
one decimal for flights, two for kWh) happens only in :func:`render`.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Literal

from pydantic import BaseModel, ConfigDict, model_validator

from .errors import UnknownFormat
from .model import (
    Facility,
    FootprintEstimate,
    MemorySpec,
    Workload,
    estimate,
)
from .refdata import ReferenceData, lookup_ci, lookup_processor
from .model import per_unit_power, ProcessorProfile, ProcessorKind

RenderFormat = Literal["text", "markdown", "json"]


class EstimateRequest(BaseModel):
    """Calculator input: one power specification plus context fields.

    Exactly one of `processor_name`, the (`tdp_watts`, `unit_count`) pair,
    or `power_kw` must be given. Unknown fields are rejected so client
    typos surface immediately.
    """

    model_config = ConfigDict(extra="forbid")

    runtime_hours: float
    cores: int | None = None
    processor_name: str | None = None
    tdp_watts: float | None = None
    unit_count: int | None = None
    power_kw: float | None = None
    usage_factor: float | None = None
    mem_gb: float = 0.0
    region_code: str = "WORLD"
    pue: float | None = None
    psf: float | None = None

    @model_validator(mode="after")
    def _check_power_spec(self) -> "EstimateRequest":
        if (self.tdp_watts is None) != (self.unit_count is None):
            raise ValueError("tdp_watts and unit_count must be given together")
        specs = [self.processor_name is not None,
                 self.tdp_watts is not None,
                 self.power_kw is not None]
        if sum(specs) != 1:
            raise ValueError(
                "exactly one power specification required: "
                "processor_name, tdp_watts+unit_count, or power_kw"
            )
        if self.power_kw is None and self.cores is None:
            raise ValueError("cores is required unless power_kw is given")
        return self


@dataclass(frozen=True)
class ReportPayload:
    """Unrounded estimate plus request echo and data provenance."""

    request: dict
    core_kwh: float
    memory_kwh: float
    it_kwh: float
    total_kwh: float
    gco2e_single: float
    psf: float
    gco2e_scaled: float
    car_km_eu: float
    car_km_us: float
    flights_paris_london: float
    flights_ny_sf: float
    flights_ny_melbourne: float
    tree_months: float
    tree_years: float
    region_code: str
    gco2e_per_kwh: float
    data_version: str

    def to_dict(self) -> dict:
        return asdict(self)


def resolve_request(
    req: EstimateRequest, refdata: ReferenceData
) -> tuple[Workload, Facility]:
    """Map a request onto model inputs, applying catalog lookups and defaults."""
    if req.processor_name is not None:
        per_core = per_unit_power(lookup_processor(refdata.processors, req.processor_name))
    elif req.tdp_watts is not None:
        profile = ProcessorProfile(name="custom", kind=ProcessorKind.OTHER,
                                   tdp_watts=req.tdp_watts, unit_count=req.unit_count)
        per_core = per_unit_power(profile)
    else:
        per_core = 0.0

    workload = Workload(
        runtime_hours=req.runtime_hours,
        core_count=req.cores or 0,
        usage_factor=1.0 if req.usage_factor is None else req.usage_factor,
        per_core_power_w=per_core,
        memory=MemorySpec(size_gb=req.mem_gb,
                          power_per_gb=refdata.constants.memory_w_per_gb),
        psf=1.0 if req.psf is None else req.psf,
        explicit_power_kw=req.power_kw,
    )
    pue = refdata.constants.world_avg_pue if req.pue is None else req.pue
    return workload, Facility(label=req.region_code, pue=pue)


def run_estimate(req: EstimateRequest, refdata: ReferenceData) -> ReportPayload:
    """The shared estimate path used by library, CLI and service."""
    workload, facility = resolve_request(req, refdata)
    ci = lookup_ci(refdata.carbon_intensities, req.region_code)
    result = estimate(workload, facility, ci, refdata.constants)
    return payload_from_estimate(req, result, refdata.version)


def payload_from_estimate(
    req: EstimateRequest, result: FootprintEstimate, data_version: str
) -> ReportPayload:
    eq = result.equivalences
    return ReportPayload(
        request=req.model_dump(exclude_none=True),
        core_kwh=result.energy.core_kwh,
        memory_kwh=result.energy.memory_kwh,
        it_kwh=result.energy.it_kwh,
        total_kwh=result.energy.total_kwh,
        gco2e_single=result.gco2e_single,
        psf=result.psf,
        gco2e_scaled=result.gco2e_scaled,
        car_km_eu=eq.car_km_eu,
        car_km_us=eq.car_km_us,
        flights_paris_london=eq.flights_paris_london,
        flights_ny_sf=eq.flights_ny_sf,
        flights_ny_melbourne=eq.flights_ny_melbourne,
        tree_months=eq.tree_months,
        tree_years=eq.tree_years,
        region_code=result.ci_used.region_code,
        gco2e_per_kwh=result.ci_used.gco2e_per_kwh,
        data_version=data_version,
    )


def round_half_away(value: float, decimals: int = 0) -> float:
    """Round half away from zero; Python's round() would round half to even."""
    factor = 10.0 ** decimals
    return math.copysign(math.floor(abs(value) * factor + 0.5), value) / factor


def fmt_grams(value: float) -> str:
    return f"{round_half_away(value):,.0f}"


def fmt_km(value: float) -> str:
    return f"{round_half_away(value):,.0f}"


def fmt_flights(value: float) -> str:
    return f"{round_half_away(value, 1):,.1f}"


def fmt_kwh(value: float) -> str:
    return f"{round_half_away(value, 2):,.2f}"


def _lines(payload: ReportPayload) -> list[tuple[str, str]]:
    return [
        ("Energy (total)", f"{fmt_kwh(payload.total_kwh)} kWh"),
        ("  cores", f"{fmt_kwh(payload.core_kwh)} kWh"),
        ("  memory", f"{fmt_kwh(payload.memory_kwh)} kWh"),
        ("Carbon intensity", f"{payload.gco2e_per_kwh:g} gCO2e/kWh ({payload.region_code})"),
        ("Footprint (single run)", f"{fmt_grams(payload.gco2e_single)} gCO2e"),
        (f"Footprint (PSF {payload.psf:g})", f"{fmt_grams(payload.gco2e_scaled)} gCO2e"),
        ("Driving (EU car)", f"{fmt_km(payload.car_km_eu)} km"),
        ("Driving (US car)", f"{fmt_km(payload.car_km_us)} km"),
        ("Flights Paris-London", fmt_flights(payload.flights_paris_london)),
        ("Flights NY-SF", fmt_flights(payload.flights_ny_sf)),
        ("Flights NY-Melbourne", fmt_flights(payload.flights_ny_melbourne)),
        ("Tree sequestration", f"{fmt_grams(payload.tree_months)} tree-months"
                               f" (~{fmt_grams(payload.tree_years)} tree-years)"),
    ]


def render(payload: ReportPayload, format: RenderFormat = "text") -> str:
    """Deterministic report rendering; JSON carries unrounded values."""
    if format == "json":
        return json.dumps(payload.to_dict(), sort_keys=True)
    if format == "text":
        rows = _lines(payload)
        width = max(len(label) for label, _ in rows)
        body = "\n".join(f"{label.ljust(width)}  {value}" for label, value in rows)
        return f"Carbon footprint estimate (data {payload.data_version})\n{body}\n"
    if format == "markdown":
        rows = _lines(payload)
        body = "\n".join(f"| {label.strip()} | {value} |" for label, value in rows)
        return (
            f"### Carbon footprint estimate\n\n"
            f"| Quantity | Value |\n|---|---|\n{body}\n\n"
            f"_Data version: {payload.data_version}_\n"
        )
    raise UnknownFormat(f"unknown format: {format!r}")
