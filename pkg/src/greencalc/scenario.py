"""What-if analyses: relocation comparisons, core-count sweeps, sector scale.

For a fixed workload the footprint is proportional to PUE * CI, so a
relocation's relative change is (PUE_b * CI_b) / (PUE_a * CI_a) - 1. For
parallelisation, with negligible memory draw, moving from (n1, t1) cores to
(n2, t2) increases emissions exactly when n2*t2 > n1*t1: a speed-up only
pays off if runtime shrinks at least as fast as the core count grows.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .constants import DEFAULT_CONSTANTS, ReferenceConstants
from .errors import ValidationError
from .model import (
    Facility,
    FootprintEstimate,
    GridCarbonIntensity,
    MemorySpec,
    Workload,
    estimate,
)

__all__ = [
    "ScenarioSetting",
    "Comparison",
    "ScalingCurve",
    "SweepRow",
    "SweepResult",
    "compare",
    "sweep",
    "sector_estimate",
]


@dataclass(frozen=True)
class ScenarioSetting:
    """A workload pinned to a facility and grid."""

    workload: Workload
    facility: Facility
    ci: GridCarbonIntensity
    label: str = ""


@dataclass(frozen=True)
class Comparison:
    """Footprints of two settings plus absolute and relative deltas (b vs a)."""

    a: FootprintEstimate
    b: FootprintEstimate
    absolute_delta_g: float
    relative_change: float


@dataclass(frozen=True)
class ScalingCurve:
    """Measured runtime per core count, strictly increasing in cores."""

    points: tuple[tuple[int, float], ...]

    def __post_init__(self):
        if not self.points:
            raise ValidationError("points", "curve must be non-empty")
        prev = 0
        for cores, runtime in self.points:
            if cores <= prev:
                raise ValidationError("points", "core counts must be strictly increasing")
            if runtime <= 0:
                raise ValidationError("points", "runtimes must be positive")
            prev = cores


@dataclass(frozen=True)
class SweepRow:
    core_count: int
    runtime_hours: float
    result: FootprintEstimate


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]
    optimal_core_count: int


def compare(
    a: ScenarioSetting,
    b: ScenarioSetting,
    constants: ReferenceConstants = DEFAULT_CONSTANTS,
) -> Comparison:
    """Estimate both settings and report the change going from a to b."""
    fa = estimate(a.workload, a.facility, a.ci, constants)
    fb = estimate(b.workload, b.facility, b.ci, constants)
    delta = fb.gco2e_scaled - fa.gco2e_scaled
    if fa.gco2e_scaled == 0.0:
        relative = 0.0 if delta == 0.0 else float("inf")
    else:
        relative = delta / fa.gco2e_scaled
    return Comparison(a=fa, b=fb, absolute_delta_g=delta, relative_change=relative)


def sweep(
    base: Workload,
    curve: ScalingCurve,
    facility: Facility,
    ci: GridCarbonIntensity,
    constants: ReferenceConstants = DEFAULT_CONSTANTS,
    scale_memory_with_cores: bool = False,
) -> SweepResult:
    """Estimate the base workload at each (cores, runtime) point of a curve.

    The base workload supplies per-core power, usage factor, memory and PSF;
    the curve supplies core count and runtime per point. Memory is held
    constant across points unless `scale_memory_with_cores` is set, in which
    case the base memory size is treated as per-core and multiplied by the
    core count (cluster-style allocations).
    """
    if base.explicit_power_kw is not None:
        raise ValidationError("explicit_power_kw", "sweeps need a modelled workload")
    rows = []
    for cores, runtime in curve.points:
        memory = base.memory
        if scale_memory_with_cores:
            memory = MemorySpec(size_gb=base.memory.size_gb * cores,
                                power_per_gb=base.memory.power_per_gb)
        point = replace(base, core_count=cores, runtime_hours=runtime, memory=memory)
        rows.append(SweepRow(cores, runtime, estimate(point, facility, ci, constants)))
    # ties go to the smallest core count; min() keeps the first of equals
    best = min(rows, key=lambda r: r.result.gco2e_scaled)
    return SweepResult(rows=tuple(rows), optimal_core_count=best.core_count)


def sector_estimate(total_twh: float, ci: GridCarbonIntensity) -> float:
    """Sector-scale footprint in tonnes CO2e from total demand in TWh."""
    if total_twh < 0:
        raise ValidationError("total_twh", "must be >= 0")
    return total_twh * 1e9 * ci.gco2e_per_kwh / 1e6
