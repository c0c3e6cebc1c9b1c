"""Contractually fixed reference constants.

These defaults are part of the package contract: changing any of them is a
breaking change, not a tuning knob. The bundled constants.csv carries the
same values with provenance and is validated against this class at test
time.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .errors import ValidationError


@dataclass(frozen=True)
class ReferenceConstants:
    """Physical and equivalence constants used throughout the model."""

    memory_w_per_gb: float = 0.3725
    car_eu_g_per_km: float = 175.0
    car_us_g_per_km: float = 251.0
    flight_paris_london_g: float = 50_000.0
    flight_ny_sf_g: float = 570_000.0
    flight_ny_melbourne_g: float = 2_310_000.0
    tree_kg_per_year: float = 11.0
    world_avg_pue: float = 1.67
    personal_device_pue: float = 1.0
    world_avg_ci: float = 475.0

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValidationError(f.name, "must be positive")

    @property
    def tree_g_per_month(self) -> float:
        """Grams of CO2 a mature tree sequesters per month (11 kg/year)."""
        return self.tree_kg_per_year * 1000.0 / 12.0


DEFAULT_CONSTANTS = ReferenceConstants()
