"""솔버 옵션과 상태 값"""

import os
import sys
from dataclasses import dataclass, fields, replace
from typing import Mapping, Optional

sys.path.append(os.path.dirname(os.path.dirname(__file__)))
from errors import ConfigError


OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
NODE_LIMIT = "node_limit"
TIME_LIMIT = "time_limit"


@dataclass(frozen=True)
class SolverOptions:
    """LP/B&B 공통 허용오차와 탐색 한도. 무작위성 없음 (항상 결정적)"""
    feasibility_tol: float = 1e-7
    integrality_tol: float = 1e-6
    gap: float = 1e-6
    node_limit: Optional[int] = 100_000
    time_limit: Optional[float] = None
    optimality_tol: float = 1e-9
    pivot_tol: float = 1e-9
    bland_after: int = 500
    max_pivots: int = 50_000
    seed_incumbent: bool = True
    deterministic: bool = True

    def __post_init__(self):
        for name in ("feasibility_tol", "integrality_tol", "gap", "optimality_tol", "pivot_tol"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"solver.{name}는 양수여야 함: {getattr(self, name)}")
        if self.node_limit is not None and self.node_limit < 1:
            raise ConfigError(f"solver.node_limit는 1 이상이어야 함: {self.node_limit}")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ConfigError(f"solver.time_limit는 양수여야 함: {self.time_limit}")
        if self.bland_after < 1 or self.max_pivots < 1:
            raise ConfigError("solver.bland_after/max_pivots는 1 이상이어야 함")
        if not self.deterministic:
            raise ConfigError("solver.deterministic은 끌 수 없음")

    @classmethod
    def from_mapping(cls, data: Optional[Mapping] = None) -> "SolverOptions":
        """설정 파일 solver 섹션 → 옵션"""
        if not data:
            return cls()
        known = {f.name: f for f in fields(cls)}
        unknown = set(data) - set(known)
        if unknown:
            raise ConfigError(f"solver: 알 수 없는 항목 {sorted(unknown)}")
        values = {}
        for key, value in data.items():
            if value is None:
                values[key] = None
            elif key in ("seed_incumbent", "deterministic"):
                if not isinstance(value, bool):
                    raise ConfigError(f"solver.{key}는 true/false여야 함")
                values[key] = value
            elif key in ("node_limit", "bland_after", "max_pivots"):
                values[key] = _convert(int, value, key)
            else:
                values[key] = _convert(float, value, key)
        return cls(**values)

    def with_overrides(self, **changes) -> "SolverOptions":
        """CLI 플래그 덮어쓰기 (None은 무시)"""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


def _convert(kind, value, key):
    if isinstance(value, bool):
        raise ConfigError(f"solver.{key}: 숫자가 필요함 ({value!r})")
    try:
        return kind(value)
    except (TypeError, ValueError):
        raise ConfigError(f"solver.{key}: 숫자가 필요함 ({value!r})")
