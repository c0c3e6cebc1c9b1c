"""Stateless JSON service exposing the calculator under /v1.

Handlers are pure functions over immutable catalogs loaded at app
creation, so any request concurrency is safe. Validation failures return
400 with a machine-readable error code and the offending field; unknown
catalog lookups return 404 with suggestions.
"""

from __future__ import annotations

from dataclasses import asdict
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from . import scenario
from .errors import NotFound, UnknownFormat, ValidationError
from .refdata import ReferenceData, load_bundled, lookup_ci
from .report import EstimateRequest, payload_from_estimate, resolve_request, run_estimate
from .presets import PRESETS


class CompareRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    a: EstimateRequest
    b: EstimateRequest


class SweepBase(EstimateRequest):
    """Sweep template: runtime and cores come from the curve, not the base."""

    runtime_hours: float = 1.0
    cores: int | None = 1


class CurvePoint(BaseModel):
    model_config = ConfigDict(extra="forbid")
    cores: int = Field(ge=1)
    runtime_hours: float = Field(gt=0)


class SweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    base: SweepBase
    curve: list[CurvePoint]
    scale_memory_with_cores: bool = False


def _error_body(code: str, field: str | None = None, message: str = "", **extra) -> dict:
    err = {"code": code, "message": message}
    if field is not None:
        err["field"] = field
    err.update(extra)
    return {"error": err}


def run_compare(req: CompareRequest, refdata: ReferenceData) -> dict:
    """Shared compare path (used by both the CLI and the service)."""
    settings = []
    for which in (req.a, req.b):
        workload, facility = resolve_request(which, refdata)
        ci = lookup_ci(refdata.carbon_intensities, which.region_code)
        settings.append(scenario.ScenarioSetting(workload=workload, facility=facility, ci=ci))
    cmp = scenario.compare(settings[0], settings[1], refdata.constants)
    return {
        "a": payload_from_estimate(req.a, cmp.a, refdata.version).to_dict(),
        "b": payload_from_estimate(req.b, cmp.b, refdata.version).to_dict(),
        "absolute_delta_g": cmp.absolute_delta_g,
        "relative_change": cmp.relative_change,
    }


def run_sweep(req: SweepRequest, refdata: ReferenceData) -> dict:
    """Shared sweep path (used by both the CLI and the service)."""
    base_workload, facility = resolve_request(req.base, refdata)
    ci = lookup_ci(refdata.carbon_intensities, req.base.region_code)
    curve = scenario.ScalingCurve(
        points=tuple((p.cores, p.runtime_hours) for p in req.curve)
    )
    result = scenario.sweep(
        base_workload, curve, facility, ci, refdata.constants,
        scale_memory_with_cores=req.scale_memory_with_cores,
    )
    rows = []
    for row in result.rows:
        point_req = req.base.model_copy(
            update={"runtime_hours": row.runtime_hours, "cores": row.core_count}
        )
        rows.append({
            "cores": row.core_count,
            "runtime_hours": row.runtime_hours,
            "estimate": payload_from_estimate(point_req, row.result, refdata.version).to_dict(),
        })
    return {"rows": rows, "optimal_core_count": result.optimal_core_count}


def create_app(data_dir: Path | None = None, refdata: ReferenceData | None = None) -> FastAPI:
    refdata = refdata or load_bundled(data_dir)
    app = FastAPI(title="greencalc", version="0.1.0")
    # the web calculator is typically served from a different origin
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(RequestValidationError)
    async def _invalid(request: Request, exc: RequestValidationError):
        first = exc.errors()[0]
        loc = [str(part) for part in first.get("loc", []) if part != "body"]
        return JSONResponse(
            status_code=400,
            content=_error_body("validation", field=".".join(loc) or None,
                                message=first.get("msg", "invalid request")),
        )

    @app.exception_handler(ValidationError)
    async def _domain_invalid(request: Request, exc: ValidationError):
        return JSONResponse(status_code=400,
                            content=_error_body("validation", field=exc.field, message=str(exc)))

    @app.exception_handler(NotFound)
    async def _not_found(request: Request, exc: NotFound):
        return JSONResponse(
            status_code=404,
            content=_error_body("not_found", message=str(exc),
                                name=exc.name, suggestions=exc.suggestions),
        )

    @app.exception_handler(UnknownFormat)
    async def _bad_format(request: Request, exc: UnknownFormat):
        return JSONResponse(status_code=400,
                            content=_error_body("unknown_format", message=str(exc)))

    @app.get("/v1/health")
    def health():
        return {"status": "ok", "data_version": refdata.version}

    @app.post("/v1/estimate")
    def estimate_endpoint(req: EstimateRequest):
        return run_estimate(req, refdata).to_dict()

    @app.post("/v1/compare")
    def compare_endpoint(req: CompareRequest):
        return run_compare(req, refdata)

    @app.post("/v1/sweep")
    def sweep_endpoint(req: SweepRequest):
        return run_sweep(req, refdata)

    @app.get("/v1/data/processors")
    def processors():
        return [
            {"name": p.name, "kind": p.kind.value, "tdp_watts": p.tdp_watts,
             "unit_count": p.unit_count, "source": p.source}
            for p in refdata.processors.entries
        ]

    @app.get("/v1/data/carbon-intensity")
    def carbon_intensity():
        return [asdict(ci) for ci in refdata.carbon_intensities.entries]

    @app.get("/v1/data/constants")
    def constants():
        return asdict(refdata.constants)

    @app.get("/v1/presets")
    def presets():
        return [
            {"name": p.name, "description": p.description,
             "request": p.request.model_dump(exclude_none=True)}
            for p in PRESETS
        ]

    return app
