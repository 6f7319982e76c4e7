"""사이징 문제 정의: BESS 파라미터와 시나리오"""

import math
import os
import sys
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Sequence, Tuple

sys.path.append(os.path.dirname(os.path.dirname(__file__)))
from errors import AssemblyError, ParameterError
from ingest import TypicalDayProfile
from projection import RESOURCES

from .costs import CostBook


DEFAULT_COUNT_BOUNDS = {"wec": 200, "tec": 200, "owt": 200, "fpv": 1_000_000}

# 충·방전 최대 전력 기본값 = 부하 피크 × 0.25
DEFAULT_POWER_SHARE = 0.25


@dataclass(frozen=True)
class BessParams:
    """BESS 효율, SOC 창, 충·방전 전력 한도 (kW), 선택적 용량 상한 (kWh)"""
    charge_efficiency: float = 0.80
    discharge_efficiency: float = 0.95
    soc_min: float = 0.1
    soc_max: float = 0.9
    p_max_charge: Optional[float] = None
    p_max_discharge: Optional[float] = None
    capacity_limit: Optional[float] = None

    def __post_init__(self):
        if not 0 < self.charge_efficiency <= 1:
            raise ParameterError(f"충전 효율은 (0, 1] 범위여야 함: {self.charge_efficiency}")
        if not 0 < self.discharge_efficiency <= 1:
            raise ParameterError(f"방전 효율은 (0, 1] 범위여야 함: {self.discharge_efficiency}")
        if not 0 <= self.soc_min < self.soc_max <= 1:
            raise ParameterError(f"0 ≤ soc_min < soc_max ≤ 1 이어야 함: {self.soc_min}, {self.soc_max}")
        for name in ("p_max_charge", "p_max_discharge", "capacity_limit"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ParameterError(f"{name}은 음수일 수 없음: {value}")


@dataclass(frozen=True)
class SizingScenario:
    """부하, 단위 설비당 발전 프로파일, 비용, BESS, 수량 상한 (Δt = 1h)"""
    load: Tuple[float, ...]
    generation: Mapping[str, Tuple[float, ...]]
    costs: CostBook = field(default_factory=CostBook)
    bess: BessParams = field(default_factory=BessParams)
    count_upper_bounds: Mapping[str, int] = field(default_factory=lambda: dict(DEFAULT_COUNT_BOUNDS))
    curtailment: bool = True
    region: str = ""

    def __post_init__(self):
        object.__setattr__(self, "load", tuple(float(v) for v in self.load))
        generation = {r: tuple(float(v) for v in self.generation.get(r, [0.0] * len(self.load)))
                      for r in RESOURCES}
        unknown = set(self.generation) - set(RESOURCES)
        if unknown:
            raise ParameterError(f"알 수 없는 자원: {sorted(unknown)}")
        object.__setattr__(self, "generation", generation)
        bounds = dict(DEFAULT_COUNT_BOUNDS)
        bounds.update({r: int(v) for r, v in self.count_upper_bounds.items()})
        if any(v < 0 for v in bounds.values()):
            raise ParameterError(f"수량 상한은 음수일 수 없음: {bounds}")
        object.__setattr__(self, "count_upper_bounds", bounds)

    @classmethod
    def from_profiles(cls, load: TypicalDayProfile, generation: Mapping[str, TypicalDayProfile],
                      **kwargs) -> "SizingScenario":
        """대표일 프로파일로 시나리오 생성 (불완전 프로파일은 조립 오류)"""
        for name, profile in [("load", load)] + sorted(generation.items()):
            if not profile.is_usable:
                raise AssemblyError(f"{name} 프로파일 불완전: 누락 시간 {list(profile.missing_hours)}")
        return cls(
            load=load.hour_values,
            generation={name: p.hour_values for name, p in generation.items()},
            **kwargs,
        )

    @property
    def horizon(self) -> int:
        return len(self.load)

    @property
    def load_peak(self) -> float:
        return max(self.load) if self.load else 0.0

    @property
    def p_max_charge(self) -> float:
        if self.bess.p_max_charge is not None:
            return self.bess.p_max_charge
        return DEFAULT_POWER_SHARE * self.load_peak

    @property
    def p_max_discharge(self) -> float:
        if self.bess.p_max_discharge is not None:
            return self.bess.p_max_discharge
        return DEFAULT_POWER_SHARE * self.load_peak

    def check_profiles(self):
        """조립 전 프로파일 길이/유한성 검사"""
        if self.horizon == 0:
            raise AssemblyError("부하 프로파일이 비어 있음")
        series: Sequence[Tuple[str, Sequence[float]]] = [("load", self.load)] + list(self.generation.items())
        for name, values in series:
            if len(values) != self.horizon:
                raise AssemblyError(f"{name} 프로파일 길이 {len(values)} ≠ 부하 {self.horizon}")
            if any(not math.isfinite(v) or v < 0 for v in values):
                raise AssemblyError(f"{name} 프로파일에 음수 또는 유한하지 않은 값이 있음")

    def max_supply(self, with_storage: bool = True) -> Dict[int, float]:
        """수량 상한에서 가능한 시간별 최대 공급 (kW)"""
        supply = {}
        for t in range(self.horizon):
            total = sum(self.count_upper_bounds[r] * self.generation[r][t] for r in RESOURCES)
            if with_storage and self.bess.capacity_limit != 0:
                total += self.p_max_discharge
            supply[t] = total
        return supply
