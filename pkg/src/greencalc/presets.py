"""Named case-study presets: known-good calculator configurations.

Each preset is a complete estimate request reproducing a published case
study, so users (and the web UI) can start from a configuration whose
output is pinned by the acceptance suite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .report import EstimateRequest

# 8 minutes per forecast day, expressed in hours
_FD_RUNTIME_H = 8.0 / 60.0


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    request: EstimateRequest


PRESETS: tuple[Preset, ...] = (
    Preset(
        name="geant4-dna",
        description="DNA irradiation study: 3-week run on 12 cores, 11 energy levels (PSF 11)",
        request=EstimateRequest(
            runtime_hours=504, cores=12, processor_name="Xeon E5-2680 v3",
            mem_gb=10, region_code="WORLD", pue=1.67, psf=11,
        ),
    ),
    Preset(
        name="bert-training",
        description="Language-model training: 79 h on 64 V100 GPUs at 62.7% usage",
        request=EstimateRequest(
            runtime_hours=79, cores=64, processor_name="Tesla V100",
            usage_factor=0.627, mem_gb=0, region_code="WORLD", pue=1.67,
        ),
    ),
    Preset(
        name="meena-training",
        description="Chatbot training: 30 days on a TPU pod with a measured 288 kW supply",
        request=EstimateRequest(
            runtime_hours=720, power_kw=288, region_code="WORLD", pue=1.67,
        ),
    ),
    Preset(
        name="icon-daily-forecast",
        description="Weather model, 20,700 cores, 180 forecast days/day (PSF 180), German grid",
        request=EstimateRequest(
            runtime_hours=_FD_RUNTIME_H, cores=20_700, processor_name="Xeon E5-2695 v4",
            mem_gb=36_800, region_code="DE", pue=1.67, psf=180,
        ),
    ),
    Preset(
        name="ifs-daily-forecast",
        description="Weather model, 4,608 cores, 180 forecast days/day (PSF 180), UK facility",
        request=EstimateRequest(
            runtime_hours=_FD_RUNTIME_H, cores=4_608, processor_name="Xeon E5-2695 v4",
            mem_gb=8_192, region_code="GB", pue=1.45, psf=180,
        ),
    ),
)


def get_preset(name: str) -> Preset | None:
    for preset in PRESETS:
        if preset.name == name:
            return preset
    return None
