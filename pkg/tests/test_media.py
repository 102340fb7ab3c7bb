"""Tests for the attenuation table and clinical/SI unit conversion.

The conversion oracle is computed by hand in the tests:
dB -> Np is ln(10)/20 (amplitude convention), per-cm -> per-m is x100,
and MHz -> rad/s contributes (2*pi*1e6)**(-y).
"""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracwave import (
    ClinicalAttenuation,
    Medium,
    asymptotic_attenuation,
    builtin_media,
    from_si,
    load_media,
    lookup_medium,
    medium_from_power_law,
    to_si,
)
from fracwave.errors import DomainError, IncompleteMediumError, MediaFileError
from fracwave.media import DB_PER_NEPER

HEADER = "name,alpha0_db_per_cm_per_MHz_y,y"


class TestClinicalAttenuation:
    def test_prefactor_known_flag(self):
        assert ClinicalAttenuation(0.5, 1.1).prefactor_known
        assert not ClinicalAttenuation(None, 1.1).prefactor_known

    def test_rejects_nonpositive_prefactor(self):
        with pytest.raises(DomainError):
            ClinicalAttenuation(0.0, 1.0)

    @pytest.mark.parametrize("y", [-0.1, 2.1])
    def test_rejects_exponent_out_of_range(self, y):
        with pytest.raises(DomainError):
            ClinicalAttenuation(1.0, y)


class TestBuiltinTable:
    def test_expected_entries(self):
        table = dict(builtin_media())
        assert table["Water"] == ClinicalAttenuation(0.0022, 2.0)
        assert table["Fat"] == ClinicalAttenuation(0.158, 1.7)
        assert table["DuctCancer"] == ClinicalAttenuation(0.57, 1.3)
        assert table["BodyTissue"] == ClinicalAttenuation(0.87, 1.5)

    def test_exponent_only_entries(self):
        table = dict(builtin_media())
        assert table["RigidTubeBoundaryLayer"] == ClinicalAttenuation(None, 0.5)
        assert table["SedimentsRock"] == ClinicalAttenuation(None, 1.0)

    def test_lookup(self):
        assert lookup_medium("Water").y == 2.0
        with pytest.raises(DomainError):
            lookup_medium("Unobtainium")

    def test_lookup_with_extra_table(self):
        extra = {"Gel": ClinicalAttenuation(0.3, 1.4)}
        assert lookup_medium("Gel", extra) == extra["Gel"]


class TestUnitConversion:
    def test_water_hand_computed(self):
        alpha0_si, y = to_si(ClinicalAttenuation(0.0022, 2.0))
        hand = 0.0022 * (math.log(10.0) / 20.0) * 100.0 / (2.0 * math.pi * 1e6) ** 2
        assert alpha0_si == pytest.approx(hand, rel=1e-12)
        assert y == 2.0

    def test_zero_exponent_is_pure_db_np_cm_m_factor(self):
        clinical = ClinicalAttenuation(1.0, 0.0)
        alpha0_si, _ = to_si(clinical)
        assert alpha0_si == pytest.approx(100.0 / DB_PER_NEPER, rel=1e-14)

    def test_db_per_neper_constant(self):
        assert DB_PER_NEPER == pytest.approx(8.685889638, rel=1e-9)

    @pytest.mark.parametrize("name", ["Water", "Fat", "DuctCancer", "BodyTissue"])
    def test_round_trip_builtin(self, name):
        clinical = lookup_medium(name)
        alpha0_si, y = to_si(clinical)
        back = from_si(alpha0_si, y)
        assert back.alpha0_db == pytest.approx(clinical.alpha0_db, rel=1e-12)
        assert back.y == clinical.y

    @given(alpha0_si=st.floats(1e-18, 1e-3), y=st.floats(0.0, 2.0))
    def test_round_trip_property(self, alpha0_si, y):
        clinical = from_si(alpha0_si, y)
        again, _ = to_si(clinical)
        assert again == pytest.approx(alpha0_si, rel=1e-12)

    def test_exponent_only_entry_cannot_convert(self):
        with pytest.raises(IncompleteMediumError):
            to_si(ClinicalAttenuation(None, 0.5))

    def test_from_si_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            from_si(0.0, 1.0)


class TestMediumFromPowerLaw:
    def test_thermoviscous_inversion(self):
        # y=2, eta=1 gives s=2 and gamma = 2*alpha0*c0
        m = medium_from_power_law(0.005, 2.0, 1.0, 1.0)
        assert m.s == pytest.approx(2.0)
        assert m.gamma == pytest.approx(0.01)

    def test_damped_wave_inversion(self):
        m = medium_from_power_law(0.25, 0.0, 1.0, 1.0)
        assert m.s == pytest.approx(0.0)
        assert m.gamma == pytest.approx(0.5)

    def test_fractional_inversion(self):
        m = medium_from_power_law(1e-3, 1.7, 1500.0, 1.5)
        assert m.s == pytest.approx(1.2)
        assert m.eta == 1.5

    @pytest.mark.parametrize("y,eta", [(1.7, 1.5), (0.5, 0.7), (2.0, 1.0)])
    def test_asymptotic_law_round_trip(self, y, eta):
        # the constructed medium's small-loss law reproduces the inputs
        m = medium_from_power_law(3e-4, y, 2.0, eta)
        law = asymptotic_attenuation(m)
        assert law.alpha0 == pytest.approx(3e-4, rel=1e-12)
        assert law.y == pytest.approx(y, abs=1e-12)

    def test_unreachable_exponent_reports_valid_interval(self):
        with pytest.raises(DomainError, match="eta"):
            medium_from_power_law(1e-3, 0.0, 1.0, 1.9)  # s would be -0.9

    def test_rejects_eta_out_of_range(self):
        with pytest.raises(DomainError):
            medium_from_power_law(1e-3, 1.0, 1.0, 2.0)

    def test_returns_medium(self):
        assert isinstance(medium_from_power_law(1e-3, 1.0, 1.0, 1.0), Medium)


class TestLoadMedia:
    def write(self, tmp_path, text):
        path = tmp_path / "media.csv"
        path.write_text(text)
        return path

    def test_loads_builtin_shaped_table(self, tmp_path):
        path = self.write(tmp_path, "\n".join([
            "# comment line",
            HEADER,
            "Water,0.0022,2.0",
            "Fat,0.158,1.7",
            "RigidTubeBoundaryLayer,,0.5",
        ]) + "\n")
        entries = dict(load_media(path))
        assert entries["Water"] == ClinicalAttenuation(0.0022, 2.0)
        assert entries["Fat"] == ClinicalAttenuation(0.158, 1.7)
        assert entries["RigidTubeBoundaryLayer"] == ClinicalAttenuation(None, 0.5)

    def test_empty_file_gives_empty_table(self, tmp_path):
        assert load_media(self.write(tmp_path, "")) == []

    def test_bad_header(self, tmp_path):
        path = self.write(tmp_path, "nom,a,b\nWater,1,1\n")
        with pytest.raises(MediaFileError):
            load_media(path)

    def test_negative_prefactor_reports_line(self, tmp_path):
        path = self.write(tmp_path, f"{HEADER}\nGood,0.1,1.0\nBad,-1,1.0\n")
        with pytest.raises(MediaFileError) as exc_info:
            load_media(path)
        assert exc_info.value.line == 3

    def test_duplicate_name(self, tmp_path):
        path = self.write(tmp_path, f"{HEADER}\nWater,0.1,1.0\nWater,0.2,1.0\n")
        with pytest.raises(MediaFileError, match="duplicate"):
            load_media(path)

    def test_non_numeric_value(self, tmp_path):
        path = self.write(tmp_path, f"{HEADER}\nWater,abc,1.0\n")
        with pytest.raises(MediaFileError):
            load_media(path)

    def test_wrong_column_count(self, tmp_path):
        path = self.write(tmp_path, f"{HEADER}\nWater,0.1\n")
        with pytest.raises(MediaFileError):
            load_media(path)

    def test_empty_name(self, tmp_path):
        path = self.write(tmp_path, f"{HEADER}\n,0.1,1.0\n")
        with pytest.raises(MediaFileError):
            load_media(path)
