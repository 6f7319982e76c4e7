"""해양 기상/해류 프로파일 → 단위 설비당 전력 프로파일 (TEC, WEC, OWT, FPV)"""

import csv
import math
import os
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from errors import FormatError, IncompleteProfileError, ParameterError
from ingest import HourlySeries, TypicalDayProfile, typical_day


BETZ_LIMIT = 16.0 / 27.0

RESOURCES = ("wec", "tec", "owt", "fpv")


@dataclass(frozen=True)
class RotorSpec:
    """회전자 기반 설비(TEC/OWT) 사양"""
    fluid_density: float
    rotor_radius: float
    power_coefficient: float
    electrical_efficiency: float
    rated_power: float
    cut_in_speed: float = 0.0
    cut_out_speed: Optional[float] = None

    def __post_init__(self):
        if self.fluid_density <= 0:
            raise ParameterError(f"유체 밀도는 양수여야 함: {self.fluid_density}")
        if self.rotor_radius <= 0:
            raise ParameterError(f"회전자 반경은 양수여야 함: {self.rotor_radius}")
        if not 0 < self.power_coefficient <= BETZ_LIMIT:
            raise ParameterError(f"출력계수는 (0, 16/27] 범위여야 함: {self.power_coefficient}")
        if not 0 < self.electrical_efficiency <= 1:
            raise ParameterError(f"전기 효율은 (0, 1] 범위여야 함: {self.electrical_efficiency}")
        if self.rated_power <= 0:
            raise ParameterError(f"정격 출력은 양수여야 함: {self.rated_power}")
        if self.cut_in_speed < 0:
            raise ParameterError(f"cut-in 속도는 음수일 수 없음: {self.cut_in_speed}")
        if self.cut_out_speed is not None and self.cut_in_speed >= self.cut_out_speed:
            raise ParameterError(f"cut-in({self.cut_in_speed}) < cut-out({self.cut_out_speed}) 이어야 함")


@dataclass(frozen=True)
class WindShearSpec:
    """로그 풍속 프로파일 파라미터"""
    measurement_height: float = 4.0
    hub_height: float = 80.0
    roughness_length: float = 0.0002

    def __post_init__(self):
        if not self.measurement_height > self.roughness_length > 0:
            raise ParameterError(
                f"측정 높이 > 조도 길이 > 0 이어야 함: {self.measurement_height}, {self.roughness_length}"
            )
        if self.hub_height < self.measurement_height:
            raise ParameterError(f"허브 높이는 측정 높이 이상이어야 함: {self.hub_height} < {self.measurement_height}")


@dataclass(frozen=True)
class WecPowerMatrix:
    """유의파고(hs) × 파주기(te) 출력표 (kW)"""
    hs_axis: Tuple[float, ...]
    te_axis: Tuple[float, ...]
    cells: Tuple[Tuple[float, ...], ...]
    rated_power: float = 750.0

    def __post_init__(self):
        if len(self.hs_axis) < 2 or len(self.te_axis) < 2:
            raise ParameterError(f"출력표는 2×2 이상이어야 함: {len(self.hs_axis)}×{len(self.te_axis)}")
        for name, axis in (("hs", self.hs_axis), ("te", self.te_axis)):
            if any(b <= a for a, b in zip(axis, axis[1:])):
                raise ParameterError(f"{name} 축은 순증가해야 함: {axis}")
        if len(self.cells) != len(self.hs_axis) or any(len(row) != len(self.te_axis) for row in self.cells):
            raise ParameterError("출력표 크기가 축과 일치하지 않음")
        if self.rated_power <= 0:
            raise ParameterError(f"정격 출력은 양수여야 함: {self.rated_power}")
        if any(not 0 <= c <= self.rated_power for row in self.cells for c in row):
            raise ParameterError(f"출력표 값은 [0, {self.rated_power}] 범위여야 함")

    @classmethod
    def from_csv(cls, path: str, rated_power: float = 750.0) -> "WecPowerMatrix":
        """첫 행 = te 축, 첫 열 = hs 축, 본문 = kW"""
        name = os.path.basename(path)
        with open(path, 'r', encoding='utf-8', newline='') as f:
            rows = [row for row in csv.reader(f) if row and not row[0].startswith("#")]
        if len(rows) < 2:
            raise FormatError("출력표 행이 부족함", name)
        try:
            te_axis = tuple(float(v) for v in rows[0][1:])
            hs_axis = tuple(float(row[0]) for row in rows[1:])
            cells = tuple(tuple(float(v) for v in row[1:]) for row in rows[1:])
        except ValueError as e:
            raise FormatError(f"숫자가 아닌 값: {e}", name)
        return cls(hs_axis=hs_axis, te_axis=te_axis, cells=cells, rated_power=rated_power)


@dataclass(frozen=True)
class FpvSpec:
    """부유식 PV 패널 1장과 PVWatts 기준 시스템의 정격"""
    panel_rating: float = 0.4
    reference_system_rating: float = 4.0

    def __post_init__(self):
        if self.panel_rating <= 0 or self.reference_system_rating <= 0:
            raise ParameterError(
                f"FPV 정격은 양수여야 함: {self.panel_rating}, {self.reference_system_rating}"
            )


def default_tec() -> RotorSpec:
    return RotorSpec(fluid_density=1025.0, rotor_radius=10.0, power_coefficient=0.40,
                     electrical_efficiency=0.95, rated_power=500.0, cut_in_speed=0.5)


def default_owt() -> RotorSpec:
    return RotorSpec(fluid_density=1.225, rotor_radius=80.0, power_coefficient=0.45,
                     electrical_efficiency=0.95, rated_power=8000.0, cut_in_speed=3.0,
                     cut_out_speed=25.0)


@dataclass(frozen=True)
class ProjectionSpecs:
    """네 가지 자원의 단위 설비 사양 묶음"""
    wec: WecPowerMatrix
    tec: RotorSpec = field(default_factory=default_tec)
    owt: RotorSpec = field(default_factory=default_owt)
    shear: WindShearSpec = field(default_factory=WindShearSpec)
    fpv: FpvSpec = field(default_factory=FpvSpec)


def extrapolate_wind_speed(v_ref: float, shear: WindShearSpec) -> float:
    """측정 높이 풍속을 허브 높이로 외삽 (로그 프로파일)"""
    if v_ref < 0:
        raise ParameterError(f"풍속은 음수일 수 없음: {v_ref}")
    if shear.hub_height == shear.measurement_height:
        return v_ref
    return v_ref * math.log(shear.hub_height / shear.roughness_length) / math.log(
        shear.measurement_height / shear.roughness_length
    )


def swept_area_power(v: float, spec: RotorSpec) -> float:
    """½ρπr²v³·Cp·η (kW), cut-in 미만/cut-out 이상 0, 정격에서 포화"""
    if v < 0:
        raise ParameterError(f"유속은 음수일 수 없음: {v}")
    if v < spec.cut_in_speed:
        return 0.0
    if spec.cut_out_speed is not None and v >= spec.cut_out_speed:
        return 0.0
    raw_w = 0.5 * spec.fluid_density * math.pi * spec.rotor_radius ** 2 * v ** 3 \
        * spec.power_coefficient * spec.electrical_efficiency
    return min(raw_w / 1000.0, spec.rated_power)


def wec_power(hs: float, te: float, matrix: WecPowerMatrix) -> float:
    """출력표 쌍선형 보간. 축 아래는 첫 행/열이 모두 0이면 0, 아니면 가장자리 값"""
    if hs < 0 or te < 0:
        raise ParameterError(f"파고/주기는 음수일 수 없음: hs={hs}, te={te}")
    if hs == 0:
        return 0.0

    cells = np.asarray(matrix.cells, dtype=float)
    hs_axis = np.asarray(matrix.hs_axis, dtype=float)
    te_axis = np.asarray(matrix.te_axis, dtype=float)
    if hs < hs_axis[0] and not np.any(cells[0]):
        return 0.0
    if te < te_axis[0] and not np.any(cells[:, 0]):
        return 0.0
    # np.interp는 축 밖을 가장자리 값으로 고정
    along_te = np.array([np.interp(te, te_axis, row) for row in cells])
    value = float(np.interp(hs, hs_axis, along_te))
    return min(max(value, 0.0), matrix.rated_power)


def fpv_unit_power(system_ac: float, spec: FpvSpec) -> float:
    """PVWatts 기준 시스템 AC 출력을 패널 1장 출력으로 선형 환산"""
    if system_ac < 0:
        raise ParameterError(f"AC 출력은 음수일 수 없음: {system_ac}")
    return system_ac * (spec.panel_rating / spec.reference_system_rating)


def owt_unit_power(v_ref: float, specs: ProjectionSpecs) -> float:
    return swept_area_power(extrapolate_wind_speed(v_ref, specs.shear), specs.owt)


def _profile_map(profile: TypicalDayProfile, fn) -> TypicalDayProfile:
    return TypicalDayProfile(
        hour_values=tuple(fn(v) for v in profile.hour_values),
        sample_counts=profile.sample_counts,
    )


def build_generation_profiles(wind_speed: TypicalDayProfile, wave_height: TypicalDayProfile,
                              wave_period: TypicalDayProfile, tidal_speed: TypicalDayProfile,
                              pv_ac: TypicalDayProfile, specs: ProjectionSpecs) -> Dict[str, TypicalDayProfile]:
    """대표일 입력을 시각별로 투영해 단위 설비당 출력 프로파일 4개 생성"""
    for name, profile in (("wind_speed", wind_speed), ("wave_height", wave_height),
                          ("wave_period", wave_period), ("tidal_speed", tidal_speed), ("pv_ac", pv_ac)):
        if not profile.is_usable:
            raise IncompleteProfileError(profile.missing_hours, source=name)

    wec_values = tuple(
        wec_power(hs, te, specs.wec) for hs, te in zip(wave_height.hour_values, wave_period.hour_values)
    )
    wec_counts = tuple(min(a, b) for a, b in zip(wave_height.sample_counts, wave_period.sample_counts))

    return {
        "wec": TypicalDayProfile(wec_values, wec_counts),
        "tec": _profile_map(tidal_speed, lambda v: swept_area_power(v, specs.tec)),
        "owt": _profile_map(wind_speed, lambda v: owt_unit_power(v, specs)),
        "fpv": _profile_map(pv_ac, lambda v: fpv_unit_power(v, specs.fpv)),
    }


def project_series(series: HourlySeries, fn) -> HourlySeries:
    """시간별 관측치마다 전력 모델 적용 (갭 유지)"""
    return series.map(fn)


def wec_power_series(wave_height: HourlySeries, wave_period: HourlySeries,
                     matrix: WecPowerMatrix) -> HourlySeries:
    """같은 시각의 파고/주기 쌍으로 WEC 출력 시계열 생성 (한쪽이라도 없으면 갭)"""
    hs = wave_height.to_pandas()
    te = wave_period.to_pandas()
    joined = hs.to_frame("hs").join(te.to_frame("te"), how="outer").asfreq("h")
    power = [
        np.nan if np.isnan(row.hs) or np.isnan(row.te) else wec_power(row.hs, row.te, matrix)
        for row in joined.itertuples()
    ]
    joined["power"] = power
    return HourlySeries.from_pandas(joined["power"])


def build_profiles_from_series(wind_speed: HourlySeries, wave_height: HourlySeries,
                               wave_period: HourlySeries, tidal_speed: HourlySeries,
                               pv_ac: HourlySeries, specs: ProjectionSpecs) -> Dict[str, TypicalDayProfile]:
    """관측 시간마다 출력을 계산한 뒤 대표일 평균 (비선형 모델이므로 평균 전에 투영)"""
    return {
        "wec": typical_day(wec_power_series(wave_height, wave_period, specs.wec), source="wec"),
        "tec": typical_day(project_series(tidal_speed, lambda v: swept_area_power(v, specs.tec)), source="tec"),
        "owt": typical_day(project_series(wind_speed, lambda v: owt_unit_power(v, specs)), source="owt"),
        "fpv": typical_day(project_series(pv_ac, lambda v: fpv_unit_power(v, specs.fpv)), source="fpv"),
    }
