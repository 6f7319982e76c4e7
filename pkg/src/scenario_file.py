"""시나리오 설정 파일 로드 (YAML, JSON도 그대로 읽힘)"""

import os
import sys
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Dict, Mapping, Optional, Tuple

import yaml

sys.path.append(os.path.dirname(__file__))
from errors import AssemblyError, ConfigError
from ingest import (
    SpeedUnit, TypicalDayProfile, WAVE_PERIOD_FIELDS, load_profiles, read_currents, read_ndbc,
    read_pvwatts, to_hourly,
)
from model import BessParams, CostBook, SizingScenario
from projection import (
    RESOURCES, FpvSpec, ProjectionSpecs, RotorSpec, WecPowerMatrix, WindShearSpec,
    build_profiles_from_series, default_owt, default_tec,
)
from solver import SolverOptions


project_root = Path(__file__).parent.parent

DEFAULT_MATRIX = project_root / "config" / "wec_power_matrix.csv"
DEFAULT_OUTPUT_DIR = project_root / "output"

SECTIONS = ("region", "costs", "bess", "curtailment", "bounds", "profiles", "datasets",
            "projection", "solver", "output")
PROFILE_NAMES = ("load",) + RESOURCES


@dataclass(frozen=True)
class DatasetConfig:
    """원본 데이터 파일 경로와 해석 옵션"""
    ndbc: Optional[Path] = None
    currents: Optional[Path] = None
    pvwatts: Optional[Path] = None
    current_unit: str = "knots"
    timezone: str = "UTC"
    pv_system_rating: Optional[float] = None
    wave_period_channel: str = "DPD"
    aggregation: str = "mean"

    @property
    def complete(self) -> bool:
        return all(p is not None for p in (self.ndbc, self.currents, self.pvwatts))


@dataclass(frozen=True)
class ScenarioFile:
    path: Path
    region: str = ""
    costs: CostBook = field(default_factory=CostBook)
    bess: BessParams = field(default_factory=BessParams)
    curtailment: bool = True
    bounds: Dict[str, int] = field(default_factory=dict)
    inline_profiles: Dict[str, Tuple[float, ...]] = field(default_factory=dict)
    profile_document: Optional[Path] = None
    datasets: DatasetConfig = field(default_factory=DatasetConfig)
    projection: Optional[ProjectionSpecs] = None
    solver: SolverOptions = field(default_factory=SolverOptions)
    output_dir: Path = DEFAULT_OUTPUT_DIR

    @property
    def name(self) -> str:
        return self.path.stem


def load_scenario(path) -> ScenarioFile:
    """시나리오 파일 로드 (상대 경로는 파일 위치 기준)"""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"시나리오 파일이 없음: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            config = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"{path.name}: YAML/JSON 파싱 실패: {e}")
    if not isinstance(config, Mapping):
        raise ConfigError(f"{path.name}: 최상위는 매핑이어야 함")

    unknown = set(config) - set(SECTIONS)
    if unknown:
        raise ConfigError(f"{path.name}: 알 수 없는 항목 {sorted(unknown)}")

    base = path.parent
    curtailment = config.get("curtailment", True)
    if not isinstance(curtailment, bool):
        raise ConfigError("curtailment는 true/false여야 함")

    profiles = _section(config, "profiles")
    _reject_unknown(profiles, ("document", "inline"), "profiles")
    document = _existing(base, profiles.get("document"), "profiles.document")

    output = _section(config, "output")
    _reject_unknown(output, ("dir",), "output")
    output_dir = base / output["dir"] if output.get("dir") else DEFAULT_OUTPUT_DIR

    return ScenarioFile(
        path=path,
        region=str(config.get("region", "")),
        costs=CostBook.from_overrides(_section(config, "costs")),
        bess=_dataclass_from(BessParams, _section(config, "bess"), "bess"),
        curtailment=curtailment,
        bounds=_bounds(_section(config, "bounds")),
        inline_profiles=_inline_profiles(profiles.get("inline") or {}),
        profile_document=document,
        datasets=_datasets(_section(config, "datasets"), base),
        projection=_projection(_section(config, "projection"), base),
        solver=SolverOptions.from_mapping(_section(config, "solver")),
        output_dir=output_dir,
    )


def _section(config: Mapping, key: str) -> Mapping:
    value = config.get(key) or {}
    if not isinstance(value, Mapping):
        raise ConfigError(f"{key}는 매핑이어야 함")
    return value


def _reject_unknown(section: Mapping, allowed, label: str):
    unknown = set(section) - set(allowed)
    if unknown:
        raise ConfigError(f"{label}: 알 수 없는 항목 {sorted(unknown)}")


def _existing(base: Path, value, label: str) -> Optional[Path]:
    if not value:
        return None
    path = (base / value).resolve()
    if not path.exists():
        raise ConfigError(f"{label}: 파일이 없음 ({path})")
    return path


def _dataclass_from(cls, data: Mapping, label: str):
    """설정 매핑 → 숫자 필드 dataclass (None 허용)"""
    known = {f.name for f in fields(cls)}
    _reject_unknown(data, known, label)
    values = {}
    for key, value in data.items():
        if value is None:
            values[key] = None
            continue
        if isinstance(value, bool):
            raise ConfigError(f"{label}.{key}: 숫자가 필요함 ({value!r})")
        try:
            values[key] = float(value)
        except (TypeError, ValueError):
            raise ConfigError(f"{label}.{key}: 숫자가 필요함 ({value!r})")
    return cls(**values)


def _bounds(data: Mapping) -> Dict[str, int]:
    _reject_unknown(data, RESOURCES, "bounds")
    bounds = {}
    for key, value in data.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)) or value != int(value):
            raise ConfigError(f"bounds.{key}: 정수가 필요함 ({value!r})")
        bounds[key] = int(value)
    return bounds


def _inline_profiles(data: Mapping) -> Dict[str, Tuple[float, ...]]:
    _reject_unknown(data, PROFILE_NAMES, "profiles.inline")
    profiles = {}
    for key, values in data.items():
        if not isinstance(values, (list, tuple)):
            raise ConfigError(f"profiles.inline.{key}: 리스트가 필요함")
        try:
            profiles[key] = tuple(float(v) for v in values)
        except (TypeError, ValueError):
            raise ConfigError(f"profiles.inline.{key}: 숫자가 아닌 값이 있음")
    return profiles


def _datasets(data: Mapping, base: Path) -> DatasetConfig:
    allowed = [f.name for f in fields(DatasetConfig)]
    _reject_unknown(data, allowed, "datasets")
    channel = str(data.get("wave_period_channel", "DPD")).upper()
    if channel not in WAVE_PERIOD_FIELDS:
        raise ConfigError(f"datasets.wave_period_channel: {sorted(WAVE_PERIOD_FIELDS)} 중 하나여야 함")
    rating = data.get("pv_system_rating")
    return DatasetConfig(
        ndbc=_existing(base, data.get("ndbc"), "datasets.ndbc"),
        currents=_existing(base, data.get("currents"), "datasets.currents"),
        pvwatts=_existing(base, data.get("pvwatts"), "datasets.pvwatts"),
        current_unit=SpeedUnit.parse(data.get("current_unit", "knots")).value,
        timezone=str(data.get("timezone", "UTC")),
        pv_system_rating=None if rating is None else float(rating),
        wave_period_channel=channel,
        aggregation=str(data.get("aggregation", "mean")),
    )


def _projection(data: Mapping, base: Path) -> Optional[ProjectionSpecs]:
    _reject_unknown(data, ("tec", "owt", "shear", "fpv", "wec_matrix", "wec_rated_power"), "projection")
    matrix_path = _existing(base, data.get("wec_matrix"), "projection.wec_matrix") or DEFAULT_MATRIX
    if not matrix_path.exists():
        return None
    rated = float(data.get("wec_rated_power", 750.0))
    tec = _rotor(default_tec(), data.get("tec") or {}, "projection.tec")
    owt = _rotor(default_owt(), data.get("owt") or {}, "projection.owt")
    return ProjectionSpecs(
        wec=WecPowerMatrix.from_csv(str(matrix_path), rated_power=rated),
        tec=tec,
        owt=owt,
        shear=_dataclass_from(WindShearSpec, data.get("shear") or {}, "projection.shear"),
        fpv=_dataclass_from(FpvSpec, data.get("fpv") or {}, "projection.fpv"),
    )


def _rotor(default: RotorSpec, data: Mapping, label: str) -> RotorSpec:
    """기본 회전자 사양 위에 설정 값 덮어쓰기"""
    current = {f.name: getattr(default, f.name) for f in fields(RotorSpec)}
    return _dataclass_from(RotorSpec, {**current, **data}, label)


def build_dataset_profiles(scenario: ScenarioFile) -> Dict[str, TypicalDayProfile]:
    """원본 데이터 → 시간별 시계열 → 단위 설비 출력 → 대표일 프로파일"""
    ds = scenario.datasets
    if not ds.complete:
        raise ConfigError("datasets에 ndbc, currents, pvwatts 경로가 모두 필요함")
    if scenario.projection is None:
        raise ConfigError(f"WEC 출력표가 없음: {DEFAULT_MATRIX}")

    meteo = read_ndbc(str(ds.ndbc))
    currents = read_currents(str(ds.currents), speed_unit=ds.current_unit, timezone=ds.timezone)
    pv = read_pvwatts(str(ds.pvwatts), system_rating=ds.pv_system_rating)

    period_field = WAVE_PERIOD_FIELDS[ds.wave_period_channel]
    specs = replace(scenario.projection, fpv=replace(scenario.projection.fpv,
                                                      reference_system_rating=pv.system_rating))
    profiles = build_profiles_from_series(
        wind_speed=to_hourly(meteo, "wind_speed", ds.aggregation),
        wave_height=to_hourly(meteo, "sig_wave_height", ds.aggregation),
        wave_period=to_hourly(meteo, period_field, ds.aggregation),
        tidal_speed=to_hourly(currents, "speed", ds.aggregation),
        pv_ac=to_hourly(pv.records, "ac_output", ds.aggregation),
        specs=specs,
    )
    if "load" in scenario.inline_profiles:
        profiles["load"] = TypicalDayProfile.from_values(scenario.inline_profiles["load"])
    return profiles


def resolve_profiles(scenario: ScenarioFile) -> Dict[str, Tuple[float, ...]]:
    """프로파일 문서 → 인라인 값 순서로 덮어써서 부하 + 자원 4종 확정"""
    resolved: Dict[str, Tuple[float, ...]] = {}
    if scenario.profile_document is not None:
        for name, profile in load_profiles(str(scenario.profile_document)).items():
            if name not in PROFILE_NAMES:
                continue
            if not profile.is_usable:
                raise AssemblyError(f"{name} 프로파일 불완전: 누락 시간 {list(profile.missing_hours)}")
            resolved[name] = profile.hour_values
    resolved.update(scenario.inline_profiles)

    if "load" not in resolved:
        raise ConfigError("부하 프로파일(load)이 없음: profiles.inline.load 또는 profiles.document 필요")
    horizon = len(resolved["load"])
    for name in RESOURCES:
        resolved.setdefault(name, (0.0,) * horizon)
    return resolved


def to_sizing_scenario(scenario: ScenarioFile,
                       profiles: Optional[Mapping[str, Tuple[float, ...]]] = None) -> SizingScenario:
    profiles = profiles or resolve_profiles(scenario)
    return SizingScenario(
        load=profiles["load"],
        generation={name: profiles[name] for name in RESOURCES},
        costs=scenario.costs,
        bess=scenario.bess,
        count_upper_bounds=scenario.bounds,
        curtailment=scenario.curtailment,
        region=scenario.region,
    )
