"""Bundled reference catalogs: processors, grid carbon intensities, constants.

The catalogs ship as versioned CSV files under ``greencalc/data/`` and are
pinned by SHA-256 checksum (``data/CHECKSUMS``, retrieval date recorded
there). Catalogs are immutable after load; reloading produces a new value.

CSV dialect: UTF-8, comma-separated, LF or CRLF line endings, no quoted
embedded commas.
"""

from __future__ import annotations

import csv
import hashlib
import io
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import IO, Iterable

from .constants import DEFAULT_CONSTANTS, ReferenceConstants
from .errors import (
    ChecksumMismatch,
    DuplicateName,
    InvariantViolation,
    MalformedRow,
    MissingWorldAverage,
    NotFound,
    ValidationError,
)
from .model import GridCarbonIntensity, ProcessorKind, ProcessorProfile, per_unit_power

PROCESSOR_HEADER = ["name", "kind", "tdp_watts", "unit_count", "source"]
CI_HEADER = ["region_code", "region_name", "gco2e_per_kwh", "year", "source"]
CONSTANTS_HEADER = ["key", "value", "unit", "source"]

WORLD_CODE = "WORLD"
WORLD_AVG_CI = 475.0
MAX_PER_UNIT_WATTS = 500.0
CI_SPAN = (19.0, 880.0)  # observed country span; sub-regions may fall outside


def _fold(name: str) -> str:
    return name.strip().casefold()


def _text_lines(source: IO) -> Iterable[str]:
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return data.splitlines()


def _read_rows(source: IO, header: list[str]) -> list[tuple[int, list[str]]]:
    """Parse CSV rows, enforcing the exact expected header on line 1."""
    lines = list(_text_lines(source))
    if not lines:
        raise MalformedRow(1, f"missing header, expected {','.join(header)}")
    reader = csv.reader(lines)
    rows = list(reader)
    if rows[0] != header:
        raise MalformedRow(1, f"bad header {rows[0]!r}, expected {','.join(header)}")
    out = []
    for i, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise MalformedRow(i, f"expected {len(header)} columns, got {len(row)}")
        out.append((i, row))
    return out


def _parse_float(value: str, field: str, line: int) -> float:
    try:
        return float(value)
    except ValueError:
        raise MalformedRow(line, f"unparsable number for {field}: {value!r}") from None


def _parse_int(value: str, field: str, line: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise MalformedRow(line, f"unparsable integer for {field}: {value!r}") from None


@dataclass(frozen=True)
class ProcessorCatalog:
    entries: tuple[ProcessorProfile, ...]

    def __post_init__(self):
        index = {}
        for p in self.entries:
            key = _fold(p.name)
            if key in index:
                raise DuplicateName(p.name)
            index[key] = p
        object.__setattr__(self, "_index", index)

    def get(self, name: str) -> ProcessorProfile | None:
        return self._index.get(_fold(name))

    @property
    def names(self) -> list[str]:
        return [p.name for p in self.entries]


@dataclass(frozen=True)
class CarbonIntensityCatalog:
    entries: tuple[GridCarbonIntensity, ...]

    def __post_init__(self):
        index = {}
        for ci in self.entries:
            key = _fold(ci.region_code)
            if key in index:
                raise DuplicateName(ci.region_code)
            index[key] = ci
        if _fold(WORLD_CODE) not in index:
            raise MissingWorldAverage("no WORLD row in carbon-intensity table")
        object.__setattr__(self, "_index", index)

    def get(self, region_code: str) -> GridCarbonIntensity | None:
        return self._index.get(_fold(region_code))

    @property
    def world_average(self) -> GridCarbonIntensity:
        return self._index[_fold(WORLD_CODE)]

    @property
    def codes(self) -> list[str]:
        return [ci.region_code for ci in self.entries]


def load_processors(source: IO) -> ProcessorCatalog:
    """Load and validate a processor table; row order is preserved."""
    entries: list[ProcessorProfile] = []
    seen: set[str] = set()
    for line, row in _read_rows(source, PROCESSOR_HEADER):
        name, kind, tdp, units, src = (c.strip() for c in row)
        if _fold(name) in seen:
            raise DuplicateName(name)
        try:
            profile = ProcessorProfile(
                name=name,
                kind=ProcessorKind(kind),
                tdp_watts=_parse_float(tdp, "tdp_watts", line),
                unit_count=_parse_int(units, "unit_count", line),
                source=src,
            )
        except (ValueError, ValidationError) as exc:  # bad enum value or invariant
            raise InvariantViolation(name, str(exc)) from None
        if not 0 < per_unit_power(profile) <= MAX_PER_UNIT_WATTS:
            raise InvariantViolation(
                name, f"per-unit power {per_unit_power(profile):g} W outside (0, {MAX_PER_UNIT_WATTS:g}]"
            )
        seen.add(_fold(name))
        entries.append(profile)
    return ProcessorCatalog(entries=tuple(entries))


def load_carbon_intensities(source: IO) -> CarbonIntensityCatalog:
    """Load and validate a carbon-intensity table; requires a WORLD row."""
    entries: list[GridCarbonIntensity] = []
    seen: set[str] = set()
    for line, row in _read_rows(source, CI_HEADER):
        code, name, value, year, src = (c.strip() for c in row)
        if _fold(code) in seen:
            raise DuplicateName(code)
        try:
            ci = GridCarbonIntensity(
                region_code=code,
                region_name=name,
                gco2e_per_kwh=_parse_float(value, "gco2e_per_kwh", line),
                year=_parse_int(year, "year", line),
                source=src,
            )
        except ValidationError as exc:
            raise InvariantViolation(code, str(exc)) from None
        if not 0 < ci.gco2e_per_kwh < 2000:
            raise InvariantViolation(code, f"CI {ci.gco2e_per_kwh:g} outside (0, 2000)")
        seen.add(_fold(code))
        entries.append(ci)
    return CarbonIntensityCatalog(entries=tuple(entries))


def load_constants(source: IO) -> ReferenceConstants:
    """Load constants.csv; keys must exactly match the constants fields."""
    values: dict[str, float] = {}
    for line, row in _read_rows(source, CONSTANTS_HEADER):
        key, value, _unit, _src = (c.strip() for c in row)
        if key in values:
            raise DuplicateName(key)
        values[key] = _parse_float(value, key, line)
    try:
        return ReferenceConstants(**values)
    except TypeError as exc:
        raise InvariantViolation("constants", str(exc)) from None


def serialize_processors(catalog: ProcessorCatalog) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(PROCESSOR_HEADER)
    for p in catalog.entries:
        w.writerow([p.name, p.kind.value, f"{p.tdp_watts:g}", p.unit_count, p.source])
    return buf.getvalue()


def serialize_carbon_intensities(catalog: CarbonIntensityCatalog) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CI_HEADER)
    for ci in catalog.entries:
        w.writerow([ci.region_code, ci.region_name, f"{ci.gco2e_per_kwh:g}", ci.year, ci.source])
    return buf.getvalue()


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance; used only for lookup suggestions."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def _suggestions(name: str, candidates: list[str], n: int = 3) -> list[str]:
    folded = _fold(name)
    ranked = sorted(candidates, key=lambda c: (edit_distance(folded, _fold(c)), c))
    return ranked[:n]


def lookup_processor(catalog: ProcessorCatalog, name: str) -> ProcessorProfile:
    """Case-insensitive exact lookup; raises NotFound with suggestions."""
    found = catalog.get(name)
    if found is None:
        raise NotFound(name, _suggestions(name, catalog.names))
    return found


def lookup_ci(catalog: CarbonIntensityCatalog, region_code: str) -> GridCarbonIntensity:
    """Case-insensitive exact lookup by region code; WORLD always resolves."""
    found = catalog.get(region_code)
    if found is None:
        raise NotFound(region_code, _suggestions(region_code, catalog.codes))
    return found


DATA_FILES = ["processors.csv", "carbon_intensity.csv", "constants.csv"]


def bundled_data_dir() -> Path:
    return Path(resources.files("greencalc").joinpath("data"))


def file_sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def verify_checksums(data_dir: Path) -> None:
    """Check every pinned file against data/CHECKSUMS."""
    pins: dict[str, str] = {}
    for raw in (data_dir / "CHECKSUMS").read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        digest, filename = line.split()
        pins[filename] = digest
    for filename in DATA_FILES:
        actual = file_sha256(data_dir / filename)
        expected = pins.get(filename)
        if expected is None:
            raise ChecksumMismatch(filename, "<missing pin>", actual)
        if actual != expected:
            raise ChecksumMismatch(filename, expected, actual)


@dataclass(frozen=True)
class ReferenceData:
    """All bundled catalogs, loaded together."""

    processors: ProcessorCatalog
    carbon_intensities: CarbonIntensityCatalog
    constants: ReferenceConstants
    version: str = "unknown"


def data_version(data_dir: Path) -> str:
    """Short fingerprint of the data files, for report provenance."""
    h = hashlib.sha256()
    for filename in DATA_FILES:
        h.update(file_sha256(data_dir / filename).encode())
    return h.hexdigest()[:12]


def load_bundled(data_dir: Path | None = None, verify: bool = True) -> ReferenceData:
    """Load the bundled (or an alternate) data directory."""
    data_dir = data_dir or bundled_data_dir()
    if verify and (data_dir / "CHECKSUMS").exists():
        verify_checksums(data_dir)
    with open(data_dir / "processors.csv", "rb") as f:
        processors = load_processors(f)
    with open(data_dir / "carbon_intensity.csv", "rb") as f:
        cis = load_carbon_intensities(f)
    with open(data_dir / "constants.csv", "rb") as f:
        consts = load_constants(f)
    if cis.world_average.gco2e_per_kwh != WORLD_AVG_CI:
        raise InvariantViolation(
            WORLD_CODE, f"world average must be {WORLD_AVG_CI:g} gCO2e/kWh"
        )
    return ReferenceData(
        processors=processors,
        carbon_intensities=cis,
        constants=consts,
        version=data_version(data_dir),
    )


# Backwards-compatible alias for callers that want library defaults without I/O.
DEFAULTS = DEFAULT_CONSTANTS
