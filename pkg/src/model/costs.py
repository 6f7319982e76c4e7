"""서브시스템 수명주기 비용 (사전시운전 + 자본 + 연간 O&M × 수명 + 해체)"""

import math
import os
import sys
from dataclasses import dataclass, field, replace
from typing import Dict, Mapping, Optional

sys.path.append(os.path.dirname(os.path.dirname(__file__)))
from errors import ConfigError, ParameterError


SUBSYSTEMS = ("wec", "tec", "owt", "fpv", "bess")
COST_FIELDS = ("precommissioning", "capital", "om_per_year", "decommissioning")


@dataclass(frozen=True)
class SubsystemCost:
    """단위(대 또는 kWh)당 비용"""
    precommissioning: float
    capital: float
    om_per_year: float
    decommissioning: float

    def __post_init__(self):
        for name in COST_FIELDS:
            if getattr(self, name) < 0:
                raise ParameterError(f"비용은 음수일 수 없음: {name}={getattr(self, name)}")

    def scaled(self, k: float) -> "SubsystemCost":
        return SubsystemCost(*(getattr(self, name) * k for name in COST_FIELDS))


# 기본 비용표 (WEC 750kW, TEC 500kW, OWT 8000kW, FPV 0.4kW, BESS per kWh)
TABLE1: Dict[str, SubsystemCost] = {
    "wec": SubsystemCost(126_000, 6_300_000, 272_000, 1_000_000),
    "tec": SubsystemCost(126_000, 6_598_500, 259_047, 0),
    "owt": SubsystemCost(367_200, 16_038_767, 259_047, 1_123_333),
    "fpv": SubsystemCost(132, 520, 18, 35),
    "bess": SubsystemCost(310, 150, 10, 100),
}

DEFAULT_DEGRADATION = 0.0485
DEFAULT_LIFETIME_YEARS = 20.0


def subsystem_lifetime_cost(quantity: float, sub: SubsystemCost, lifetime_years: float,
                            degradation: Optional[float] = None) -> float:
    """quantity × (precom + capital·(1 + δ·T_e) + O&M·T_e + decom). δ는 BESS 자본비에만 적용"""
    if quantity < 0:
        raise ParameterError(f"수량은 음수일 수 없음: {quantity}")
    capital = sub.capital if degradation is None else sub.capital * (1 + degradation * lifetime_years)
    return quantity * (sub.precommissioning + capital + sub.om_per_year * lifetime_years + sub.decommissioning)


@dataclass(frozen=True)
class CostBook:
    """서브시스템별 비용 + BESS 열화 계수 + 수명"""
    wec: SubsystemCost = field(default_factory=lambda: TABLE1["wec"])
    tec: SubsystemCost = field(default_factory=lambda: TABLE1["tec"])
    owt: SubsystemCost = field(default_factory=lambda: TABLE1["owt"])
    fpv: SubsystemCost = field(default_factory=lambda: TABLE1["fpv"])
    bess: SubsystemCost = field(default_factory=lambda: TABLE1["bess"])
    bess_degradation: float = DEFAULT_DEGRADATION
    lifetime_years: float = DEFAULT_LIFETIME_YEARS

    def __post_init__(self):
        if self.lifetime_years <= 0:
            raise ParameterError(f"수명은 양수여야 함: {self.lifetime_years}")
        if self.bess_degradation < 0:
            raise ParameterError(f"열화 계수는 음수일 수 없음: {self.bess_degradation}")

    @classmethod
    def from_overrides(cls, overrides: Optional[Mapping] = None) -> "CostBook":
        """설정 파일의 부분 덮어쓰기를 기본 비용표 위에 적용"""
        book = cls()
        if not overrides:
            return book
        changes = {}
        for key, value in overrides.items():
            if key in ("bess_degradation", "lifetime_years"):
                changes[key] = _number(value, f"costs.{key}")
            elif key in SUBSYSTEMS:
                if not isinstance(value, Mapping):
                    raise ConfigError(f"costs.{key}는 매핑이어야 함")
                unknown = set(value) - set(COST_FIELDS)
                if unknown:
                    raise ConfigError(f"costs.{key}: 알 수 없는 항목 {sorted(unknown)}")
                fields = {name: _number(v, f"costs.{key}.{name}") for name, v in value.items()}
                changes[key] = replace(getattr(book, key), **fields)
            else:
                raise ConfigError(f"costs: 알 수 없는 항목 {key!r}")
        return replace(book, **changes)

    def subsystem(self, name: str) -> SubsystemCost:
        return getattr(self, name)

    def unit_lifetime_cost(self, name: str) -> float:
        """단위 1개(BESS는 1 kWh)의 수명주기 비용"""
        degradation = self.bess_degradation if name == "bess" else None
        return subsystem_lifetime_cost(1, self.subsystem(name), self.lifetime_years, degradation)

    def lifetime_cost(self, name: str, quantity: float) -> float:
        degradation = self.bess_degradation if name == "bess" else None
        return subsystem_lifetime_cost(quantity, self.subsystem(name), self.lifetime_years, degradation)

    def scaled(self, k: float) -> "CostBook":
        """모든 비용에 k를 곱한 비용표"""
        return replace(self, **{name: self.subsystem(name).scaled(k) for name in SUBSYSTEMS})


def cost_breakdown(costs: CostBook, counts: Mapping[str, float], e_bess: float) -> Dict[str, float]:
    """서브시스템별 수명주기 비용"""
    breakdown = {name: costs.lifetime_cost(name, counts.get(name, 0)) for name in SUBSYSTEMS if name != "bess"}
    breakdown["bess"] = costs.lifetime_cost("bess", e_bess)
    return breakdown


def total_cost(breakdown: Mapping[str, float]) -> float:
    return math.fsum(breakdown.values())


def _number(value, label: str) -> float:
    if isinstance(value, bool):
        raise ConfigError(f"{label}: 숫자가 필요함 ({value!r})")
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{label}: 숫자가 필요함 ({value!r})")
