from __future__ import annotations

import io
from functools import lru_cache

import pytest

from greencalc.errors import (
    ChecksumMismatch,
    DuplicateName,
    InvariantViolation,
    MalformedRow,
    MissingWorldAverage,
    NotFound,
)
from greencalc.constants import DEFAULT_CONSTANTS
from greencalc.model import per_unit_power
from greencalc.refdata import (
    bundled_data_dir,
    edit_distance,
    load_bundled,
    load_carbon_intensities,
    load_constants,
    load_processors,
    lookup_ci,
    lookup_processor,
    serialize_carbon_intensities,
    serialize_processors,
    verify_checksums,
)

PROC_CSV = (
    "name,kind,tdp_watts,unit_count,source\n"
    "Xeon E5-2680 v3,cpu,120,12,intel-ark\n"
    "Tesla V100,gpu,300,1,nvidia\n"
)
CI_CSV = (
    "region_code,region_name,gco2e_per_kwh,year,source\n"
    "WORLD,World average,475,2019,IEA\n"
    "GB,United Kingdom,253.19,2020,BEIS\n"
    "IT,Italy,338.66,2020,carbonfootprint\n"
)


def stream(text: str) -> io.BytesIO:
    return io.BytesIO(text.encode("utf-8"))


class TestLoadProcessors:
    def test_row_parses_to_per_unit_power(self):
        catalog = load_processors(stream(PROC_CSV))
        assert per_unit_power(catalog.entries[0]) == 10.0

    def test_header_only_is_empty(self):
        catalog = load_processors(stream("name,kind,tdp_watts,unit_count,source\n"))
        assert catalog.entries == ()

    def test_zero_unit_count_rejected(self):
        bad = "name,kind,tdp_watts,unit_count,source\nBroken,cpu,120,0,x\n"
        with pytest.raises(InvariantViolation):
            load_processors(stream(bad))

    def test_duplicate_name_case_folded(self):
        bad = PROC_CSV + "XEON E5-2680 V3,cpu,120,12,x\n"
        with pytest.raises(DuplicateName):
            load_processors(stream(bad))

    def test_malformed_row_carries_line_number(self):
        bad = "name,kind,tdp_watts,unit_count,source\nA,cpu,not-a-number,2,x\n"
        with pytest.raises(MalformedRow) as exc:
            load_processors(stream(bad))
        assert exc.value.line == 2

    def test_wrong_column_count(self):
        bad = "name,kind,tdp_watts,unit_count,source\nA,cpu,120\n"
        with pytest.raises(MalformedRow):
            load_processors(stream(bad))

    def test_per_unit_power_cap(self):
        bad = "name,kind,tdp_watts,unit_count,source\nHot,gpu,700,1,x\n"
        with pytest.raises(InvariantViolation):
            load_processors(stream(bad))

    def test_crlf_accepted(self):
        catalog = load_processors(stream(PROC_CSV.replace("\n", "\r\n")))
        assert len(catalog.entries) == 2


class TestLoadCarbonIntensities:
    def test_world_average(self):
        catalog = load_carbon_intensities(stream(CI_CSV))
        assert catalog.world_average.gco2e_per_kwh == 475.0

    def test_relocation_ratio_holds(self):
        catalog = load_carbon_intensities(stream(CI_CSV))
        ratio = catalog.get("IT").gco2e_per_kwh / catalog.get("GB").gco2e_per_kwh
        assert ratio == pytest.approx(1.337, abs=0.005)

    def test_missing_world_average(self):
        bad = ("region_code,region_name,gco2e_per_kwh,year,source\n"
               "GB,United Kingdom,253.19,2020,BEIS\n")
        with pytest.raises(MissingWorldAverage):
            load_carbon_intensities(stream(bad))

    def test_duplicate_region(self):
        bad = CI_CSV + "GB,Duplicate,100,2020,x\n"
        with pytest.raises(DuplicateName):
            load_carbon_intensities(stream(bad))

    def test_ci_range_enforced(self):
        bad = CI_CSV + "XX,Broken,2500,2020,x\n"
        with pytest.raises(InvariantViolation):
            load_carbon_intensities(stream(bad))


class TestLookups:
    @pytest.fixture()
    def processors(self):
        return load_processors(stream(PROC_CSV))

    @pytest.fixture()
    def cis(self):
        return load_carbon_intensities(stream(CI_CSV))

    def test_case_insensitive_hit(self, processors):
        assert lookup_processor(processors, "xeon e5-2680 v3").tdp_watts == 120

    def test_empty_name_not_found(self, processors):
        with pytest.raises(NotFound):
            lookup_processor(processors, "")

    def test_typo_gets_suggestion(self, processors):
        with pytest.raises(NotFound) as exc:
            lookup_processor(processors, "Xeon E5-268O v3")  # letter O, not zero
        assert "Xeon E5-2680 v3" in exc.value.suggestions

    def test_world_resolves(self, cis):
        assert lookup_ci(cis, "WORLD").gco2e_per_kwh == 475.0

    def test_unknown_region(self, cis):
        with pytest.raises(NotFound):
            lookup_ci(cis, "ZZ")


@lru_cache(maxsize=None)
def levenshtein_oracle(a: str, b: str) -> int:
    # naive recursive definition, independent of the implementation under test
    if not a:
        return len(b)
    if not b:
        return len(a)
    return min(
        levenshtein_oracle(a[1:], b) + 1,
        levenshtein_oracle(a, b[1:]) + 1,
        levenshtein_oracle(a[1:], b[1:]) + (a[0] != b[0]),
    )


@pytest.mark.parametrize("a,b", [
    ("kitten", "sitting"),
    ("xeon", "zeon"),
    ("", "abc"),
    ("core i5", "core i7"),
    ("tesla v100", "tesla p100"),
    ("abcdef", "fedcba"),
])
def test_edit_distance_against_oracle(a, b):
    assert edit_distance(a, b) == levenshtein_oracle(a, b)


class TestBundledData:
    def test_loads_and_validates(self, refdata):
        assert refdata.carbon_intensities.world_average.gco2e_per_kwh == 475.0
        assert lookup_ci(refdata.carbon_intensities, "CH").gco2e_per_kwh == 19.0

    def test_constants_match_contract(self, refdata):
        assert refdata.constants == DEFAULT_CONSTANTS

    def test_ci_values_within_observed_span(self, refdata):
        for ci in refdata.carbon_intensities.entries:
            if "-" in ci.region_code:  # sub-regions may be flagged outside
                continue
            assert 19.0 <= ci.gco2e_per_kwh <= 880.0

    def test_checksums_verify(self):
        verify_checksums(bundled_data_dir())

    def test_checksum_mismatch_detected(self, tmp_path):
        src = bundled_data_dir()
        for f in src.iterdir():
            (tmp_path / f.name).write_bytes(f.read_bytes())
        (tmp_path / "processors.csv").write_text("name,kind,tdp_watts,unit_count,source\n")
        with pytest.raises(ChecksumMismatch):
            verify_checksums(tmp_path)

    def test_deterministic_load(self, refdata):
        again = load_bundled()
        assert again.processors == refdata.processors
        assert again.carbon_intensities == refdata.carbon_intensities
        assert again.version == refdata.version

    def test_round_trip(self, refdata):
        procs = load_processors(stream(serialize_processors(refdata.processors)))
        assert procs == refdata.processors
        cis = load_carbon_intensities(
            stream(serialize_carbon_intensities(refdata.carbon_intensities)))
        assert cis == refdata.carbon_intensities

    def test_constants_csv_matches_defaults(self):
        with open(bundled_data_dir() / "constants.csv", "rb") as f:
            assert load_constants(f) == DEFAULT_CONSTANTS
