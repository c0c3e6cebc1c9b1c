"""Command-line interface.

Exit codes: 0 success, 2 validation error, 3 data error, 4 I/O error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import pydantic

from . import ingest as ingest_mod
from .errors import DataError, ValidationError
from .refdata import ReferenceData, load_bundled, verify_checksums, bundled_data_dir
from .report import EstimateRequest, fmt_grams, fmt_kwh, render, run_estimate
from .service import CompareRequest, CurvePoint, SweepBase, SweepRequest, run_compare, run_sweep

EXIT_VALIDATION = 2
EXIT_DATA = 3
EXIT_IO = 4


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_data(data_dir: str | None) -> ReferenceData:
    try:
        return load_bundled(Path(data_dir) if data_dir else None)
    except DataError as exc:
        _fail(EXIT_DATA, str(exc))
    except OSError as exc:
        _fail(EXIT_IO, str(exc))


def _parse_kv_file(path: str) -> dict:
    """Parse a small `key = value` scenario document into a request dict."""
    values: dict[str, object] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        _fail(EXIT_IO, str(exc))
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        sep = "=" if "=" in line else (":" if ":" in line else None)
        if sep is None:
            _fail(EXIT_VALIDATION, f"{path}: expected 'key = value', got {line!r}")
        key, _, value = line.partition(sep)
        key, value = key.strip(), value.strip()
        try:
            values[key] = int(value)
        except ValueError:
            try:
                values[key] = float(value)
            except ValueError:
                values[key] = value
    return values


def _build_request(model, values: dict, source: str):
    try:
        return model(**values)
    except pydantic.ValidationError as exc:
        first = exc.errors()[0]
        field = ".".join(str(p) for p in first.get("loc", ())) or "request"
        _fail(EXIT_VALIDATION, f"{source}: {field}: {first.get('msg')}")


@click.group()
def main():
    """Carbon-footprint estimation for computational workloads."""


@main.command()
@click.option("--runtime-hours", type=float, required=True)
@click.option("--cores", type=int, default=None)
@click.option("--processor", "processor_name", default=None, help="Catalog processor name.")
@click.option("--tdp", "tdp_watts", type=float, default=None, help="Total TDP in Watts.")
@click.option("--units", "unit_count", type=int, default=None, help="Cores/devices the TDP covers.")
@click.option("--power-kw", type=float, default=None, help="Explicit total power draw in kW.")
@click.option("--usage", "usage_factor", type=float, default=None)
@click.option("--memory-gb", "mem_gb", type=float, default=0.0)
@click.option("--region", "region_code", default="WORLD")
@click.option("--pue", type=float, default=None)
@click.option("--psf", type=float, default=None)
@click.option("--format", "fmt", type=click.Choice(["text", "markdown", "json"]), default="text")
@click.option("--data-dir", default=None, type=click.Path())
def estimate(fmt, data_dir, **fields):
    """Estimate the footprint of one workload."""
    refdata = _load_data(data_dir)
    req = _build_request(EstimateRequest, {k: v for k, v in fields.items() if v is not None},
                         "estimate")
    try:
        payload = run_estimate(req, refdata)
    except ValidationError as exc:
        _fail(EXIT_VALIDATION, str(exc))
    except DataError as exc:
        _fail(EXIT_DATA, str(exc))
    click.echo(render(payload, fmt), nl=False)


@main.command()
@click.option("--scenario-a", required=True, type=click.Path())
@click.option("--scenario-b", required=True, type=click.Path())
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--data-dir", default=None, type=click.Path())
def compare(scenario_a, scenario_b, fmt, data_dir):
    """Compare two scenario files (key = value documents)."""
    refdata = _load_data(data_dir)
    req = _build_request(
        CompareRequest,
        {"a": _parse_kv_file(scenario_a), "b": _parse_kv_file(scenario_b)},
        "compare",
    )
    try:
        result = run_compare(req, refdata)
    except ValidationError as exc:
        _fail(EXIT_VALIDATION, str(exc))
    except DataError as exc:
        _fail(EXIT_DATA, str(exc))
    if fmt == "json":
        click.echo(json.dumps(result, sort_keys=True))
        return
    a, b = result["a"], result["b"]
    click.echo(f"A: {fmt_grams(a['gco2e_scaled'])} gCO2e ({scenario_a})")
    click.echo(f"B: {fmt_grams(b['gco2e_scaled'])} gCO2e ({scenario_b})")
    click.echo(f"Delta: {fmt_grams(result['absolute_delta_g'])} gCO2e "
               f"({result['relative_change']:+.1%})")


@main.command()
@click.option("--base", "base_file", required=True, type=click.Path())
@click.option("--curve", "curve_file", required=True, type=click.Path())
@click.option("--scale-memory", is_flag=True, help="Scale memory with core count.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--data-dir", default=None, type=click.Path())
def sweep(base_file, curve_file, scale_memory, fmt, data_dir):
    """Sweep a workload over a cores-vs-runtime scaling curve."""
    refdata = _load_data(data_dir)
    try:
        curve_text = Path(curve_file).read_text()
    except OSError as exc:
        _fail(EXIT_IO, str(exc))
    lines = [ln for ln in curve_text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "cores,runtime_hours":
        _fail(EXIT_VALIDATION, f"{curve_file}: expected header 'cores,runtime_hours'")
    points = []
    for i, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 2:
            _fail(EXIT_VALIDATION, f"{curve_file}:{i}: expected 2 columns")
        try:
            points.append({"cores": int(parts[0]), "runtime_hours": float(parts[1])})
        except ValueError:
            _fail(EXIT_VALIDATION, f"{curve_file}:{i}: unparsable numbers")
    req = _build_request(
        SweepRequest,
        {"base": _parse_kv_file(base_file), "curve": points,
         "scale_memory_with_cores": scale_memory},
        "sweep",
    )
    try:
        result = run_sweep(req, refdata)
    except (ValidationError, pydantic.ValidationError) as exc:
        _fail(EXIT_VALIDATION, str(exc))
    except DataError as exc:
        _fail(EXIT_DATA, str(exc))
    if fmt == "json":
        click.echo(json.dumps(result, sort_keys=True))
        return
    for row in result["rows"]:
        marker = "  <- optimal" if row["cores"] == result["optimal_core_count"] else ""
        click.echo(f"{row['cores']:>8} cores  {row['runtime_hours']:>10.3f} h  "
                   f"{fmt_grams(row['estimate']['gco2e_scaled'])} gCO2e{marker}")


@main.command("ingest")
@click.option("--jobs", "jobs_file", required=True, type=click.Path())
@click.option("--group-by", type=click.Choice(["user", "project", "region", "month"]),
              default="user")
@click.option("--default-pue", type=float, default=None)
@click.option("--default-region", default="WORLD")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--data-dir", default=None, type=click.Path())
def ingest_cmd(jobs_file, group_by, default_pue, default_region, fmt, data_dir):
    """Aggregate a scheduler accounting export into per-group footprints."""
    refdata = _load_data(data_dir)
    defaults = ingest_mod.ResolveDefaults(
        pue=default_pue if default_pue is not None else refdata.constants.world_avg_pue,
        region=default_region,
    )
    try:
        with open(jobs_file, "rb") as f:
            records = ingest_mod.parse_jobs(f)
        estimates = ingest_mod.estimate_jobs(records, defaults, refdata)
    except OSError as exc:
        _fail(EXIT_IO, str(exc))
    except DataError as exc:
        _fail(EXIT_DATA, str(exc))
    except ValidationError as exc:
        _fail(EXIT_VALIDATION, str(exc))
    summaries = ingest_mod.aggregate(estimates, group_by)
    if fmt == "json":
        click.echo(json.dumps(
            [{"group": s.group_key, "jobs": s.job_count, "total_kwh": s.total_kwh,
              "total_gco2e": s.total_gco2e} for s in summaries],
            sort_keys=True,
        ))
        return
    for s in summaries:
        click.echo(f"{s.group_key:<20} {s.job_count:>6} jobs  "
                   f"{fmt_kwh(s.total_kwh):>14} kWh  {fmt_grams(s.total_gco2e):>16} gCO2e")


@main.group()
def data():
    """Reference-data utilities."""


@data.command()
@click.option("--data-dir", default=None, type=click.Path())
def validate(data_dir):
    """Validate the bundled (or alternate) data files and checksums."""
    path = Path(data_dir) if data_dir else bundled_data_dir()
    try:
        verify_checksums(path)
        refdata = load_bundled(path)
    except DataError as exc:
        _fail(EXIT_DATA, str(exc))
    except OSError as exc:
        _fail(EXIT_IO, str(exc))
    click.echo(f"ok: {len(refdata.processors.entries)} processors, "
               f"{len(refdata.carbon_intensities.entries)} regions, "
               f"data version {refdata.version}")


@main.command()
@click.option("--port", type=int, default=8000)
@click.option("--host", default="127.0.0.1")
@click.option("--data-dir", default=None, type=click.Path())
def serve(port, host, data_dir):
    """Run the JSON service."""
    import uvicorn

    from .service import create_app

    app = create_app(Path(data_dir) if data_dir else None)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
