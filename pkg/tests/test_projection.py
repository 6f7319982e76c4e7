"""단위 설비 출력 모델 테스트"""

import math
from datetime import datetime, timedelta

import numpy as np
import pytest
import pytz

from errors import FormatError, IncompleteProfileError, ParameterError
from ingest import HourlySeries, TypicalDayProfile
from projection import (
    BETZ_LIMIT, FpvSpec, ProjectionSpecs, RotorSpec, WecPowerMatrix, WindShearSpec,
    build_generation_profiles, build_profiles_from_series, default_owt, default_tec,
    extrapolate_wind_speed, fpv_unit_power, owt_unit_power, swept_area_power, wec_power,
    wec_power_series,
)
from scenario_file import DEFAULT_MATRIX


@pytest.fixture(scope="module")
def matrix():
    return WecPowerMatrix.from_csv(str(DEFAULT_MATRIX))


def _series(values, start=datetime(2023, 1, 1, tzinfo=pytz.utc)):
    return HourlySeries(start=start, values=tuple((start + timedelta(hours=h), v) for h, v in enumerate(values)))


class TestSweptArea:

    def test_tidal_reference_value(self):
        # ½·1025·π·10²·2³·0.40·0.95 W
        assert swept_area_power(2.0, default_tec()) == pytest.approx(489.46, abs=0.01)

    def test_cubic_law_below_rating(self):
        tec = default_tec()
        assert swept_area_power(1.0, tec) * 8 == pytest.approx(swept_area_power(2.0, tec))

    def test_cubic_law_on_sampled_speeds(self):
        # 정격에 닿지 않는 사양에서 P(v)/v³ 일정
        spec = RotorSpec(fluid_density=1025.0, rotor_radius=10.0, power_coefficient=0.4,
                         electrical_efficiency=0.95, rated_power=1e12)
        unit = swept_area_power(1.0, spec)
        rng = np.random.default_rng(11)
        for v in rng.uniform(0.01, 5.0, size=1000):
            assert swept_area_power(float(v), spec) == pytest.approx(unit * v ** 3, rel=1e-9)

    def test_saturates_at_rated_power(self):
        assert swept_area_power(3.0, default_tec()) == 500.0

    def test_cut_in_and_cut_out(self):
        owt = default_owt()
        assert swept_area_power(2.9, owt) == 0.0
        assert swept_area_power(25.0, owt) == 0.0
        assert swept_area_power(0.4, default_tec()) == 0.0

    def test_negative_speed_rejected(self):
        with pytest.raises(ParameterError):
            swept_area_power(-1.0, default_tec())

    @pytest.mark.parametrize("changes", [
        {"power_coefficient": BETZ_LIMIT + 0.01},
        {"power_coefficient": 0.0},
        {"electrical_efficiency": 1.2},
        {"rotor_radius": 0.0},
        {"cut_in_speed": 5.0, "cut_out_speed": 4.0},
    ])
    def test_invalid_rotor_spec(self, changes):
        values = dict(fluid_density=1025.0, rotor_radius=10.0, power_coefficient=0.4,
                      electrical_efficiency=0.95, rated_power=500.0)
        values.update(changes)
        with pytest.raises(ParameterError):
            RotorSpec(**values)


class TestWind:

    def test_log_profile_extrapolation(self):
        assert extrapolate_wind_speed(10.0, WindShearSpec()) == pytest.approx(13.02, abs=0.01)

    def test_extrapolation_is_linear_in_speed(self):
        shear = WindShearSpec()
        rng = np.random.default_rng(13)
        for v, k in zip(rng.uniform(0.0, 30.0, size=200), rng.uniform(0.1, 5.0, size=200)):
            scaled = extrapolate_wind_speed(float(k * v), shear)
            assert scaled == pytest.approx(k * extrapolate_wind_speed(float(v), shear), rel=1e-12)

    def test_same_height_is_identity(self):
        shear = WindShearSpec(measurement_height=80.0, hub_height=80.0)
        assert extrapolate_wind_speed(7.0, shear) == 7.0

    def test_hub_below_measurement_rejected(self):
        with pytest.raises(ParameterError):
            WindShearSpec(measurement_height=10.0, hub_height=5.0)

    def test_owt_uses_hub_height_speed(self, matrix):
        specs = ProjectionSpecs(wec=matrix)
        hub = extrapolate_wind_speed(5.0, specs.shear)
        assert owt_unit_power(5.0, specs) == pytest.approx(swept_area_power(hub, specs.owt))
        assert owt_unit_power(10.0, specs) == 8000.0


class TestWec:

    def test_grid_point(self, matrix):
        assert wec_power(2.0, 8.0, matrix) == 245.0

    def test_bilinear_midpoint(self, matrix):
        # (2.0, 8) 245, (2.0, 9) 245, (2.5, 8) 383, (2.5, 9) 383
        assert wec_power(2.25, 8.5, matrix) == pytest.approx(314.0)

    def test_outside_axes_clamped_to_edge(self, matrix):
        assert wec_power(0.5, 20.0, matrix) == 3.0
        assert wec_power(9.0, 8.0, matrix) == 750.0

    def test_calm_sea_produces_nothing(self, matrix):
        assert wec_power(0.0, 8.0, matrix) == 0.0
        assert wec_power(0.0, 0.0, matrix) == 0.0

    def test_period_below_axis_clamps_to_nonzero_edge(self, matrix):
        # 첫 te 열(4 s)이 0이 아니므로 가장자리 값
        assert wec_power(1.0, 0.0, matrix) == 23.0
        assert wec_power(2.0, 0.0, matrix) == wec_power(2.0, 1e-9, matrix)

    def test_below_axis_with_zero_edge_is_zero(self):
        zero_edge = WecPowerMatrix(hs_axis=(1.0, 2.0), te_axis=(4.0, 5.0), cells=((0, 10), (0, 20)))
        assert wec_power(1.5, 3.0, zero_edge) == 0.0
        assert wec_power(0.5, 4.5, zero_edge) == pytest.approx(5.0)

        zero_row = WecPowerMatrix(hs_axis=(1.0, 2.0), te_axis=(4.0, 5.0), cells=((0, 0), (10, 20)))
        assert wec_power(0.5, 4.5, zero_row) == 0.0

    def test_continuous_across_cell_edges(self, matrix):
        rng = np.random.default_rng(7)
        for _ in range(200):
            hs = float(rng.uniform(matrix.hs_axis[0], matrix.hs_axis[-1]))
            te = float(rng.choice(matrix.te_axis[1:-1]))
            at_edge = wec_power(hs, te, matrix)
            assert wec_power(hs, te - 1e-10, matrix) == pytest.approx(at_edge, rel=1e-9, abs=1e-6)
            assert wec_power(hs, te + 1e-10, matrix) == pytest.approx(at_edge, rel=1e-9, abs=1e-6)

            te = float(rng.uniform(matrix.te_axis[0], matrix.te_axis[-1]))
            hs = float(rng.choice(matrix.hs_axis[1:-1]))
            at_edge = wec_power(hs, te, matrix)
            assert wec_power(hs - 1e-10, te, matrix) == pytest.approx(at_edge, rel=1e-9, abs=1e-6)
            assert wec_power(hs + 1e-10, te, matrix) == pytest.approx(at_edge, rel=1e-9, abs=1e-6)

    def test_never_exceeds_rating(self, matrix):
        for hs in (0.5, 1.7, 3.3, 4.5, 5.9):
            for te in (4.0, 6.5, 9.2, 13.0):
                assert 0.0 <= wec_power(hs, te, matrix) <= matrix.rated_power

    def test_axes_must_increase(self):
        with pytest.raises(ParameterError):
            WecPowerMatrix(hs_axis=(1.0, 0.5), te_axis=(4.0, 5.0), cells=((1, 2), (3, 4)))

    def test_cells_above_rating_rejected(self):
        with pytest.raises(ParameterError):
            WecPowerMatrix(hs_axis=(1.0, 2.0), te_axis=(4.0, 5.0), cells=((1, 2), (3, 900)))

    def test_malformed_csv(self, tmp_path):
        path = tmp_path / "matrix.csv"
        path.write_text("hs\\te,4,5\n1.0,a,2\n2.0,3,4\n", encoding='utf-8')
        with pytest.raises(FormatError):
            WecPowerMatrix.from_csv(str(path))

    def test_series_gap_when_either_input_missing(self, matrix):
        hs = _series([2.0, None, 2.0])
        te = _series([8.0, 8.0, None])
        power = wec_power_series(hs, te, matrix)
        assert [v for _, v in power.values] == [245.0, None, None]


class TestFpv:

    def test_linear_scaling(self):
        assert fpv_unit_power(0.4, FpvSpec()) == pytest.approx(0.04)

    def test_negative_rejected(self):
        with pytest.raises(ParameterError):
            fpv_unit_power(-0.1, FpvSpec())


class TestProfiles:

    def test_typical_day_projection(self, matrix):
        flat = lambda v: TypicalDayProfile.from_values([v] * 24)  # noqa: E731
        profiles = build_generation_profiles(
            wind_speed=flat(10.0), wave_height=flat(2.0), wave_period=flat(8.0),
            tidal_speed=flat(2.0), pv_ac=flat(4.0), specs=ProjectionSpecs(wec=matrix),
        )

        assert set(profiles) == {"wec", "tec", "owt", "fpv"}
        assert profiles["wec"].hour_values[0] == 245.0
        assert profiles["tec"].hour_values[12] == pytest.approx(489.46, abs=0.01)
        assert profiles["owt"].peak == 8000.0
        assert profiles["fpv"].mean == pytest.approx(0.4)

    def test_unusable_input_rejected(self, matrix):
        flat = TypicalDayProfile.from_values([1.0] * 24)
        holes = TypicalDayProfile(tuple([1.0] * 24), tuple([1] * 23 + [0]))
        with pytest.raises(IncompleteProfileError) as excinfo:
            build_generation_profiles(flat, flat, flat, holes, flat, ProjectionSpecs(wec=matrix))
        assert excinfo.value.missing_hours == [23]

    def test_projection_before_averaging(self, matrix):
        # 1 m/s와 3 m/s 평균(2 m/s)의 출력이 아니라 출력의 평균
        hours = 48
        tidal = _series([1.0 if h < 24 else 3.0 for h in range(hours)])
        ones = _series([1.0] * hours)
        profiles = build_profiles_from_series(
            wind_speed=ones, wave_height=ones, wave_period=_series([8.0] * hours),
            tidal_speed=tidal, pv_ac=ones, specs=ProjectionSpecs(wec=matrix),
        )
        tec = default_tec()
        expected = (swept_area_power(1.0, tec) + swept_area_power(3.0, tec)) / 2
        assert profiles["tec"].hour_values[0] == pytest.approx(expected)
        assert not math.isclose(expected, swept_area_power(2.0, tec))
        assert profiles["tec"].sample_counts[0] == 2
