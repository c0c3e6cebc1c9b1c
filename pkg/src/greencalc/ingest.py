"""Scheduler accounting ingestion: jobs.csv -> workloads -> grouped totals.

The input format is this package's own generic CSV (one row per job);
adapters from site-specific scheduler dumps are documented recipes, not
code. Jobs with zero runtime are kept (at 0 g) so job counts reconcile
with the scheduler's own accounting.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import IO, Iterable, Literal, Sequence

from .constants import DEFAULT_CONSTANTS
from .errors import MalformedRow, NegativeValue, UsageOutOfRange
from .model import (
    Facility,
    FootprintEstimate,
    EquivalenceSet,
    GridCarbonIntensity,
    MemorySpec,
    Workload,
    equivalences,
    estimate,
    per_unit_power,
)
from .refdata import ReferenceData, lookup_ci, lookup_processor

JOBS_HEADER = [
    "job_id", "user", "project", "start", "runtime_hours", "cores",
    "cpu_model", "usage_factor", "mem_gb", "region_code", "pue",
]

GroupKey = Literal["user", "project", "region", "month"]


@dataclass(frozen=True)
class JobRecord:
    """One accounting row; optional fields stay None for downstream defaulting."""

    job_id: str
    user: str
    project: str
    start: datetime
    runtime_hours: float
    cores: int
    cpu_model: str = ""
    usage_factor: float | None = None
    mem_gb: float = 0.0
    region_code: str | None = None
    pue: float | None = None


@dataclass(frozen=True)
class ResolveDefaults:
    """Site defaults applied when a job row leaves pue/region blank."""

    pue: float = DEFAULT_CONSTANTS.world_avg_pue
    region: str = "WORLD"


@dataclass(frozen=True)
class GroupSummary:
    group_key: str
    job_count: int
    total_kwh: float
    total_gco2e: float
    equivalences: EquivalenceSet


def _parse_start(value: str, line: int) -> datetime:
    try:
        dt = datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError:
        raise MalformedRow(line, f"unparsable timestamp: {value!r}") from None
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def parse_jobs(source: IO) -> list[JobRecord]:
    """Parse a jobs.csv stream; row order preserved, empty cells mean absent."""
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    rows = list(csv.reader(data.splitlines()))
    if not rows:
        raise MalformedRow(1, f"missing header, expected {','.join(JOBS_HEADER)}")
    if rows[0] != JOBS_HEADER:
        raise MalformedRow(1, f"bad header {rows[0]!r}, expected {','.join(JOBS_HEADER)}")

    records = []
    for line, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(JOBS_HEADER):
            raise MalformedRow(line, f"expected {len(JOBS_HEADER)} columns, got {len(row)}")
        cells = dict(zip(JOBS_HEADER, (c.strip() for c in row)))

        def number(field: str, default: float | None = None) -> float | None:
            raw = cells[field]
            if raw == "":
                return default
            try:
                return float(raw)
            except ValueError:
                raise MalformedRow(line, f"unparsable number for {field}: {raw!r}") from None

        runtime = number("runtime_hours")
        if runtime is None:
            raise MalformedRow(line, "runtime_hours is required")
        if runtime < 0:
            raise NegativeValue("runtime_hours", line)
        cores_f = number("cores")
        if cores_f is None:
            raise MalformedRow(line, "cores is required")
        if cores_f < 0:
            raise NegativeValue("cores", line)
        usage = number("usage_factor")
        if usage is not None and not 0.0 <= usage <= 1.0:
            raise UsageOutOfRange(line)
        mem = number("mem_gb", 0.0)
        if mem < 0:
            raise NegativeValue("mem_gb", line)
        pue = number("pue")
        if pue is not None and pue < 1.0:
            raise MalformedRow(line, f"pue must be >= 1, got {pue:g}")

        records.append(JobRecord(
            job_id=cells["job_id"],
            user=cells["user"],
            project=cells["project"],
            start=_parse_start(cells["start"], line),
            runtime_hours=runtime,
            cores=int(cores_f),
            cpu_model=cells["cpu_model"],
            usage_factor=usage,
            mem_gb=mem,
            region_code=cells["region_code"] or None,
            pue=pue,
        ))
    return records


def serialize_jobs(records: Sequence[JobRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(JOBS_HEADER)
    for r in records:
        w.writerow([
            r.job_id, r.user, r.project,
            r.start.strftime("%Y-%m-%dT%H:%M:%SZ"),
            f"{r.runtime_hours:g}", r.cores, r.cpu_model,
            "" if r.usage_factor is None else f"{r.usage_factor:g}",
            f"{r.mem_gb:g}",
            r.region_code or "",
            "" if r.pue is None else f"{r.pue:g}",
        ])
    return buf.getvalue()


def resolve(
    record: JobRecord,
    defaults: ResolveDefaults,
    refdata: ReferenceData,
) -> tuple[Workload, Facility, GridCarbonIntensity]:
    """Turn an accounting row into model inputs, filling gaps from defaults."""
    if record.cores > 0 or record.cpu_model:
        profile = lookup_processor(refdata.processors, record.cpu_model)
        core_power = per_unit_power(profile)
    else:
        core_power = 0.0  # memory-only job, no processor to resolve
    workload = Workload(
        runtime_hours=record.runtime_hours,
        core_count=record.cores,
        usage_factor=1.0 if record.usage_factor is None else record.usage_factor,
        per_core_power_w=core_power,
        memory=MemorySpec(size_gb=record.mem_gb,
                          power_per_gb=refdata.constants.memory_w_per_gb),
    )
    facility = Facility(label=record.region_code or defaults.region,
                        pue=record.pue if record.pue is not None else defaults.pue)
    ci = lookup_ci(refdata.carbon_intensities, record.region_code or defaults.region)
    return workload, facility, ci


def estimate_jobs(
    records: Iterable[JobRecord],
    defaults: ResolveDefaults,
    refdata: ReferenceData,
) -> list[tuple[JobRecord, FootprintEstimate]]:
    """Resolve and estimate every record, keeping the pairing."""
    out = []
    for record in records:
        workload, facility, ci = resolve(record, defaults, refdata)
        out.append((record, estimate(workload, facility, ci, refdata.constants)))
    return out


def _group_value(record: JobRecord, result: FootprintEstimate, key: GroupKey) -> str:
    if key == "user":
        return record.user
    if key == "project":
        return record.project
    if key == "region":
        return result.ci_used.region_code
    if key == "month":
        return record.start.strftime("%Y-%m")
    raise ValueError(f"unknown grouping key: {key!r}")


def aggregate(
    estimates: Sequence[tuple[JobRecord, FootprintEstimate]],
    key: GroupKey,
) -> list[GroupSummary]:
    """Sum footprints per group; output sorted by descending total gCO2e."""
    groups: dict[str, list[FootprintEstimate]] = {}
    for record, result in estimates:
        groups.setdefault(_group_value(record, result, key), []).append(result)
    summaries = []
    for group_key, results in groups.items():
        total_g = sum(r.gco2e_scaled for r in results)
        summaries.append(GroupSummary(
            group_key=group_key,
            job_count=len(results),
            total_kwh=sum(r.energy.total_kwh for r in results),
            total_gco2e=total_g,
            equivalences=equivalences(total_g),
        ))
    summaries.sort(key=lambda s: (-s.total_gco2e, s.group_key))
    return summaries
