"""Energy and carbon-footprint model for computational workloads.

The footprint of a run is modelled from its runtime, the number and power
draw of processing cores, the memory mobilised, the hosting facility's
power usage effectiveness (PUE) and the carbon intensity (CI) of the local
electricity grid:

    energy_kwh = t_hours * (n_cores * w_per_core * usage + gb * w_per_gb)
                 * pue / 1000
    gco2e      = energy_kwh * ci_g_per_kwh * psf

All arithmetic is 64-bit floating point; rounding happens only at the
rendering layer. Every operation here is a pure function over immutable
values, so concurrent use needs no coordination.

Storage power draw is deliberately out of the model: at per-job scale it is
more than an order of magnitude below memory and core draw.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum

from .constants import DEFAULT_CONSTANTS, ReferenceConstants
from .errors import ValidationError

__all__ = [
    "ProcessorKind",
    "ProcessorProfile",
    "MemorySpec",
    "Workload",
    "Facility",
    "GridCarbonIntensity",
    "EnergyEstimate",
    "EquivalenceSet",
    "FootprintEstimate",
    "per_unit_power",
    "energy",
    "energy_from_power",
    "footprint",
    "equivalences",
    "estimate",
]


def _require_finite(name: str, value: float) -> float:
    if not math.isfinite(value):
        raise ValidationError(name, "must be finite")
    return float(value)


class ProcessorKind(str, Enum):
    CPU = "cpu"
    GPU = "gpu"
    TPU = "tpu"
    OTHER = "other"


@dataclass(frozen=True)
class ProcessorProfile:
    """A named compute device: total package TDP plus unit count.

    For CPUs `unit_count` is the core count; for GPUs/TPUs it is the number
    of devices the TDP covers (usually 1).
    """

    name: str
    kind: ProcessorKind
    tdp_watts: float
    unit_count: int
    source: str = ""

    def __post_init__(self):
        if not self.name:
            raise ValidationError("name", "must be non-empty")
        _require_finite("tdp_watts", self.tdp_watts)
        if self.tdp_watts <= 0:
            raise ValidationError("tdp_watts", "must be positive")
        if self.unit_count < 1:
            raise ValidationError("unit_count", "must be >= 1")


def per_unit_power(profile: ProcessorProfile) -> float:
    """Power draw of a single core/device in Watts (TDP / unit count)."""
    return profile.tdp_watts / profile.unit_count


@dataclass(frozen=True)
class MemorySpec:
    """Memory mobilised by a workload; draw scales with allocation."""

    size_gb: float = 0.0
    power_per_gb: float = DEFAULT_CONSTANTS.memory_w_per_gb

    def __post_init__(self):
        _require_finite("size_gb", self.size_gb)
        _require_finite("power_per_gb", self.power_per_gb)
        if self.size_gb < 0:
            raise ValidationError("size_gb", "must be >= 0")
        if self.power_per_gb < 0:
            raise ValidationError("power_per_gb", "must be >= 0")

    @property
    def power_watts(self) -> float:
        return self.size_gb * self.power_per_gb


@dataclass(frozen=True)
class Workload:
    """One computational task.

    When `explicit_power_kw` is set (e.g. a measured pod power supply) the
    core/memory power model is bypassed entirely and the other power fields
    are inert.
    """

    runtime_hours: float
    core_count: int = 0
    usage_factor: float = 1.0
    per_core_power_w: float = 0.0
    memory: MemorySpec = field(default_factory=MemorySpec)
    psf: float = 1.0
    explicit_power_kw: float | None = None

    def __post_init__(self):
        _require_finite("runtime_hours", self.runtime_hours)
        _require_finite("usage_factor", self.usage_factor)
        _require_finite("per_core_power_w", self.per_core_power_w)
        _require_finite("psf", self.psf)
        if self.runtime_hours < 0:
            raise ValidationError("runtime_hours", "must be >= 0")
        if self.core_count < 0:
            raise ValidationError("core_count", "must be >= 0")
        if not 0.0 <= self.usage_factor <= 1.0:
            raise ValidationError("usage_factor", "must be in [0, 1]")
        if self.per_core_power_w < 0:
            raise ValidationError("per_core_power_w", "must be >= 0")
        if self.psf < 1.0:
            raise ValidationError("psf", "must be >= 1")
        if self.explicit_power_kw is not None:
            _require_finite("explicit_power_kw", self.explicit_power_kw)
            if self.explicit_power_kw <= 0:
                raise ValidationError("explicit_power_kw", "must be positive")

    def with_runtime(self, runtime_hours: float) -> "Workload":
        return replace(self, runtime_hours=runtime_hours)


@dataclass(frozen=True)
class Facility:
    """Hosting facility, characterised by its PUE.

    PUE 1.0 denotes either an ideal facility or a personal device, where the
    overhead attributable to one task cannot be measured.
    """

    label: str
    pue: float = 1.0

    def __post_init__(self):
        _require_finite("pue", self.pue)
        if self.pue < 1.0:
            raise ValidationError("pue", "must be >= 1")


@dataclass(frozen=True)
class GridCarbonIntensity:
    """Grams of CO2e emitted per kWh produced in a region."""

    region_code: str
    region_name: str
    gco2e_per_kwh: float
    year: int = 0
    source: str = ""

    def __post_init__(self):
        _require_finite("gco2e_per_kwh", self.gco2e_per_kwh)
        if self.gco2e_per_kwh <= 0:
            raise ValidationError("gco2e_per_kwh", "must be positive")


@dataclass(frozen=True)
class EnergyEstimate:
    """kWh breakdown: IT equipment split core/memory, total includes PUE."""

    core_kwh: float
    memory_kwh: float
    it_kwh: float
    total_kwh: float


@dataclass(frozen=True)
class EquivalenceSet:
    """Everyday equivalents of an emission amount (pre-rounding values)."""

    car_km_eu: float
    car_km_us: float
    flights_paris_london: float
    flights_ny_sf: float
    flights_ny_melbourne: float
    tree_months: float
    tree_years: float


@dataclass(frozen=True)
class FootprintEstimate:
    """gCO2e result for one run plus the PSF-scaled practical total."""

    gco2e_single: float
    psf: float
    gco2e_scaled: float
    energy: EnergyEstimate
    ci_used: GridCarbonIntensity
    equivalences: EquivalenceSet


def energy(workload: Workload, facility: Facility) -> EnergyEstimate:
    """Energy drawn by a modelled workload, in kWh.

    Rejects workloads carrying an explicit power figure; those must go
    through :func:`energy_from_power`.
    """
    if workload.explicit_power_kw is not None:
        raise ValidationError(
            "explicit_power_kw",
            "workload carries an explicit power figure; use energy_from_power",
        )
    t = workload.runtime_hours
    core_kwh = t * workload.core_count * workload.per_core_power_w * workload.usage_factor * 0.001
    memory_kwh = t * workload.memory.power_watts * 0.001
    it_kwh = core_kwh + memory_kwh
    return EnergyEstimate(
        core_kwh=core_kwh,
        memory_kwh=memory_kwh,
        it_kwh=it_kwh,
        total_kwh=it_kwh * facility.pue,
    )


def energy_from_power(power_kw: float, runtime_hours: float, facility: Facility) -> EnergyEstimate:
    """Energy from a directly known power draw (memory is folded into it)."""
    _require_finite("power_kw", power_kw)
    _require_finite("runtime_hours", runtime_hours)
    if power_kw <= 0:
        raise ValidationError("power_kw", "must be positive")
    if runtime_hours < 0:
        raise ValidationError("runtime_hours", "must be >= 0")
    it_kwh = power_kw * runtime_hours
    return EnergyEstimate(
        core_kwh=it_kwh,
        memory_kwh=0.0,
        it_kwh=it_kwh,
        total_kwh=it_kwh * facility.pue,
    )


def footprint(energy_kwh: float, ci: GridCarbonIntensity) -> float:
    """gCO2e emitted by producing `energy_kwh` on the given grid."""
    _require_finite("energy_kwh", energy_kwh)
    if energy_kwh < 0:
        raise ValidationError("energy_kwh", "must be >= 0")
    return energy_kwh * ci.gco2e_per_kwh


def equivalences(
    gco2e: float, constants: ReferenceConstants = DEFAULT_CONSTANTS
) -> EquivalenceSet:
    """Car/flight/tree equivalents for an emission amount."""
    _require_finite("gco2e", gco2e)
    if gco2e < 0:
        raise ValidationError("gco2e", "must be >= 0")
    tree_months = gco2e / constants.tree_g_per_month
    return EquivalenceSet(
        car_km_eu=gco2e / constants.car_eu_g_per_km,
        car_km_us=gco2e / constants.car_us_g_per_km,
        flights_paris_london=gco2e / constants.flight_paris_london_g,
        flights_ny_sf=gco2e / constants.flight_ny_sf_g,
        flights_ny_melbourne=gco2e / constants.flight_ny_melbourne_g,
        tree_months=tree_months,
        tree_years=tree_months / 12.0,
    )


def estimate(
    workload: Workload,
    facility: Facility,
    ci: GridCarbonIntensity,
    constants: ReferenceConstants = DEFAULT_CONSTANTS,
) -> FootprintEstimate:
    """Full footprint for a workload: energy, gCO2e, PSF scaling, equivalents."""
    if workload.explicit_power_kw is not None:
        e = energy_from_power(workload.explicit_power_kw, workload.runtime_hours, facility)
    else:
        e = energy(workload, facility)
    single = footprint(e.total_kwh, ci)
    scaled = single * workload.psf
    return FootprintEstimate(
        gco2e_single=single,
        psf=workload.psf,
        gco2e_scaled=scaled,
        energy=e,
        ci_used=ci,
        equivalences=equivalences(scaled, constants),
    )
