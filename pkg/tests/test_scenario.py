from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from greencalc.errors import ValidationError
from greencalc.model import Facility, GridCarbonIntensity, MemorySpec, Workload, estimate
from greencalc.refdata import lookup_ci
from greencalc.scenario import (
    ScalingCurve,
    ScenarioSetting,
    compare,
    sector_estimate,
    sweep,
)

WORLD = GridCarbonIntensity("WORLD", "World average", 475.0, 2019, "IEA")
CI100 = GridCarbonIntensity("X", "x", 100.0)


def setting(workload, pue, ci, label=""):
    return ScenarioSetting(workload=workload, facility=Facility(label or "dc", pue),
                           ci=ci, label=label)


IFS_WORKLOAD = Workload(runtime_hours=8 / 60, core_count=4608, per_core_power_w=120 / 18,
                        memory=MemorySpec(8192), psf=180)


class TestCompare:
    def test_identical_settings(self):
        w = Workload(runtime_hours=10, core_count=4, per_core_power_w=10)
        c = compare(setting(w, 1.67, WORLD), setting(w, 1.67, WORLD))
        assert c.relative_change == 0.0
        assert c.absolute_delta_g == 0.0

    def test_pue_doubling(self):
        w = Workload(runtime_hours=10, core_count=4, per_core_power_w=10)
        c = compare(setting(w, 1.0, WORLD), setting(w, 2.0, WORLD))
        assert c.relative_change == pytest.approx(1.0, rel=1e-12)

    def test_ifs_relocation(self, refdata):
        uk = lookup_ci(refdata.carbon_intensities, "GB")
        it = lookup_ci(refdata.carbon_intensities, "IT")
        c = compare(setting(IFS_WORKLOAD, 1.45, uk, "Reading"),
                    setting(IFS_WORKLOAD, 1.27, it, "Bologna"))
        assert c.relative_change == pytest.approx(0.1711, abs=0.01)
        # identical workloads: the change reduces to the PUE*CI ratio
        expected = (1.27 * it.gco2e_per_kwh) / (1.45 * uk.gco2e_per_kwh) - 1
        assert c.relative_change == pytest.approx(expected, rel=1e-9)

    def test_antisymmetric_absolute_delta(self):
        w = Workload(runtime_hours=10, core_count=4, per_core_power_w=10)
        a, b = setting(w, 1.2, WORLD), setting(w, 1.9, CI100)
        assert compare(a, b).absolute_delta_g == pytest.approx(
            -compare(b, a).absolute_delta_g, rel=1e-12)


class TestSweep:
    BASE = Workload(runtime_hours=1, core_count=1, per_core_power_w=10)

    def test_three_point_example(self):
        curve = ScalingCurve(points=((1, 60.0), (15, 3.0), (60, 1.5)))
        result = sweep(self.BASE, curve, Facility("dc", 1.0), CI100)
        emissions = [row.result.gco2e_scaled for row in result.rows]
        assert emissions == pytest.approx([60.0, 45.0, 90.0], rel=1e-12)
        assert result.optimal_core_count == 15

    def test_single_point(self):
        result = sweep(self.BASE, ScalingCurve(points=((4, 2.0),)),
                       Facility("dc", 1.67), WORLD)
        assert result.optimal_core_count == 4

    def test_quadruple_cores_half_time_doubles_emissions(self):
        curve = ScalingCurve(points=((15, 8.0), (60, 4.0)))
        result = sweep(self.BASE, curve, Facility("dc", 1.67), WORLD)
        low, high = result.rows
        assert high.result.gco2e_scaled == pytest.approx(
            2 * low.result.gco2e_scaled, rel=1e-12)

    def test_tie_breaks_to_smallest_core_count(self):
        # n*t identical at both points -> identical emissions (zero memory)
        curve = ScalingCurve(points=((2, 6.0), (4, 3.0)))
        result = sweep(self.BASE, curve, Facility("dc", 1.0), CI100)
        assert result.optimal_core_count == 2

    def test_memory_held_constant_by_default(self):
        base = Workload(runtime_hours=1, core_count=1, per_core_power_w=10,
                        memory=MemorySpec(100))
        curve = ScalingCurve(points=((1, 2.0), (2, 2.0)))
        plain = sweep(base, curve, Facility("dc", 1.0), CI100)
        assert plain.rows[0].result.energy.memory_kwh == pytest.approx(
            plain.rows[1].result.energy.memory_kwh)
        scaled = sweep(base, curve, Facility("dc", 1.0), CI100,
                       scale_memory_with_cores=True)
        assert scaled.rows[1].result.energy.memory_kwh == pytest.approx(
            2 * scaled.rows[0].result.energy.memory_kwh)

    def test_empty_curve_rejected(self):
        with pytest.raises(ValidationError):
            ScalingCurve(points=())

    def test_non_increasing_cores_rejected(self):
        with pytest.raises(ValidationError):
            ScalingCurve(points=((4, 1.0), (2, 1.0)))


class TestSectorEstimate:
    def test_supplementary_note(self):
        assert sector_estimate(200, WORLD) == pytest.approx(95e6, rel=1e-12)

    def test_zero(self):
        assert sector_estimate(0, WORLD) == 0.0

    def test_unit_conversion(self):
        ci1 = GridCarbonIntensity("X", "x", 1.0)
        assert sector_estimate(1, ci1) == pytest.approx(1000.0, rel=1e-12)


@given(st.integers(1, 500), st.floats(0.01, 100), st.integers(1, 500), st.floats(0.01, 100))
def test_break_even_rule(n1, t1, n2, t2):
    # with zero memory, emissions grow iff core-hours grow
    base = Workload(runtime_hours=1, core_count=1, per_core_power_w=10)
    f, ci = Facility("dc", 1.3), WORLD
    e1 = estimate(Workload(runtime_hours=t1, core_count=n1, per_core_power_w=10), f, ci)
    e2 = estimate(Workload(runtime_hours=t2, core_count=n2, per_core_power_w=10), f, ci)
    if n2 * t2 > n1 * t1 * (1 + 1e-12):
        assert e2.gco2e_single > e1.gco2e_single
    elif n2 * t2 < n1 * t1 * (1 - 1e-12):
        assert e2.gco2e_single < e1.gco2e_single


def random_curve(rng):
    cores = sorted(rng.sample(range(1, 10_000), rng.randint(1, 12)))
    return ScalingCurve(points=tuple((c, rng.uniform(0.01, 100)) for c in cores))


def test_argmin_invariance_under_positive_scaling():
    rng = random.Random(20_24)
    base = Workload(runtime_hours=1, core_count=1, per_core_power_w=7.5,
                    memory=MemorySpec(32))
    for _ in range(200):
        curve = random_curve(rng)
        k = rng.uniform(0.1, 10)
        ref = sweep(base, curve, Facility("dc", 1.4), CI100).optimal_core_count
        scaled_ci = GridCarbonIntensity("X", "x", 100.0 * k)
        assert sweep(base, curve, Facility("dc", 1.4), scaled_ci).optimal_core_count == ref
        pue_k = 1.0 + (1.4 - 1.0) * k  # any valid PUE; argmin ignores it entirely
        assert sweep(base, curve, Facility("dc", pue_k), CI100).optimal_core_count == ref
        from dataclasses import replace
        psf_base = replace(base, psf=max(1.0, k))
        assert sweep(psf_base, curve, Facility("dc", 1.4), CI100).optimal_core_count == ref
