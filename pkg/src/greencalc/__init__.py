"""greencalc: carbon-footprint estimation for computational workloads."""

from .constants import DEFAULT_CONSTANTS, ReferenceConstants
from .model import (
    EnergyEstimate,
    EquivalenceSet,
    Facility,
    FootprintEstimate,
    GridCarbonIntensity,
    MemorySpec,
    ProcessorKind,
    ProcessorProfile,
    Workload,
    energy,
    energy_from_power,
    equivalences,
    estimate,
    footprint,
    per_unit_power,
)
from .refdata import (
    CarbonIntensityCatalog,
    ProcessorCatalog,
    ReferenceData,
    load_bundled,
    load_carbon_intensities,
    load_processors,
    lookup_ci,
    lookup_processor,
)
from .scenario import Comparison, ScalingCurve, ScenarioSetting, SweepResult, compare, sector_estimate, sweep
from .report import EstimateRequest, ReportPayload, render, run_estimate

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CONSTANTS",
    "ReferenceConstants",
    "EnergyEstimate",
    "EquivalenceSet",
    "Facility",
    "FootprintEstimate",
    "GridCarbonIntensity",
    "MemorySpec",
    "ProcessorKind",
    "ProcessorProfile",
    "Workload",
    "energy",
    "energy_from_power",
    "equivalences",
    "estimate",
    "footprint",
    "per_unit_power",
    "CarbonIntensityCatalog",
    "ProcessorCatalog",
    "ReferenceData",
    "load_bundled",
    "load_carbon_intensities",
    "load_processors",
    "lookup_ci",
    "lookup_processor",
    "Comparison",
    "ScalingCurve",
    "ScenarioSetting",
    "SweepResult",
    "compare",
    "sector_estimate",
    "sweep",
    "EstimateRequest",
    "ReportPayload",
    "render",
    "run_estimate",
]
