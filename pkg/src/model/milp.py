"""사이징 MILP 조립

변수 순서: 자원별 수량(정수) → BESS 용량, 초기 저장량 → 시간별 저장량/충전/방전/잉여 → 충·방전 이진 변수.
"""

import math
import os
import sys
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(__file__)))
from errors import AssemblyError
from projection import RESOURCES

from .scenario import SizingScenario


class VarKind(str, Enum):
    CONTINUOUS = "continuous"
    INTEGER = "integer"
    BINARY = "binary"


SENSES = ("=", "<=", ">=")

ROW_FAMILIES = ("balance", "energy", "cycle", "soc", "exclusion", "discharge_limit", "charge_limit")


@dataclass(frozen=True)
class MilpProblem:
    """min cᵀx s.t. A x (=, ≤, ≥) b, lower ≤ x ≤ upper, 일부 변수 정수"""
    objective: np.ndarray
    matrix: np.ndarray
    senses: Tuple[str, ...]
    rhs: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    kinds: Tuple[VarKind, ...]
    names: Tuple[str, ...]
    row_families: Tuple[str, ...]
    row_names: Tuple[str, ...]

    def __post_init__(self):
        n = len(self.names)
        m = len(self.senses)
        if self.matrix.shape != (m, n):
            raise AssemblyError(f"제약 행렬 크기 {self.matrix.shape} ≠ ({m}, {n})")
        for label, vec, size in (("objective", self.objective, n), ("lower", self.lower, n),
                                 ("upper", self.upper, n), ("rhs", self.rhs, m)):
            if vec.shape != (size,):
                raise AssemblyError(f"{label} 길이 {vec.shape} ≠ {size}")
        if len(self.kinds) != n or len(self.row_families) != m or len(self.row_names) != m:
            raise AssemblyError("변수/행 메타데이터 길이 불일치")
        if len(set(self.names)) != n:
            raise AssemblyError("변수 이름 중복")
        bad = [s for s in self.senses if s not in SENSES]
        if bad:
            raise AssemblyError(f"알 수 없는 제약 방향: {bad[0]!r}")
        if np.any(self.lower > self.upper):
            j = int(np.argmax(self.lower > self.upper))
            raise AssemblyError(f"{self.names[j]}: 하한 > 상한")
        for arr in (self.objective, self.matrix, self.rhs, self.lower, self.upper):
            arr.setflags(write=False)
        object.__setattr__(self, "_index", {name: j for j, name in enumerate(self.names)})

    @property
    def n_vars(self) -> int:
        return len(self.names)

    @property
    def n_rows(self) -> int:
        return len(self.senses)

    @property
    def integer_columns(self) -> List[int]:
        return [j for j, kind in enumerate(self.kinds) if kind != VarKind.CONTINUOUS]

    def column(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise AssemblyError(f"알 수 없는 변수: {name}")

    def family_counts(self) -> Dict[str, int]:
        return dict(Counter(self.row_families))

    def kind_counts(self) -> Dict[str, int]:
        return dict(Counter(kind.value for kind in self.kinds))

    def residuals(self, x: np.ndarray) -> np.ndarray:
        """행별 위반량 (만족하면 0)"""
        lhs = self.matrix @ x
        out = np.zeros(self.n_rows)
        for i, sense in enumerate(self.senses):
            diff = lhs[i] - self.rhs[i]
            if sense == "=":
                out[i] = abs(diff)
            elif sense == "<=":
                out[i] = max(diff, 0.0)
            else:
                out[i] = max(-diff, 0.0)
        return out


class MilpBuilder:
    """이름 기반으로 변수와 행을 쌓아 MilpProblem 생성"""

    def __init__(self):
        self._names: List[str] = []
        self._index: Dict[str, int] = {}
        self._kinds: List[VarKind] = []
        self._lower: List[float] = []
        self._upper: List[float] = []
        self._cost: List[float] = []
        self._rows: List[Tuple[Dict[int, float], str, float, str, str]] = []

    def add_var(self, name: str, kind: VarKind = VarKind.CONTINUOUS, lower: float = 0.0,
                upper: float = math.inf, cost: float = 0.0) -> int:
        if name in self._index:
            raise AssemblyError(f"변수 이름 중복: {name}")
        if kind == VarKind.BINARY:
            lower, upper = max(lower, 0.0), min(upper, 1.0)
        self._index[name] = len(self._names)
        self._names.append(name)
        self._kinds.append(kind)
        self._lower.append(float(lower))
        self._upper.append(float(upper))
        self._cost.append(float(cost))
        return self._index[name]

    def add_row(self, family: str, name: str, coeffs: Mapping[str, float], sense: str, rhs: float):
        if sense not in SENSES:
            raise AssemblyError(f"알 수 없는 제약 방향: {sense!r}")
        row: Dict[int, float] = {}
        for var, coef in coeffs.items():
            if var not in self._index:
                raise AssemblyError(f"{name}: 알 수 없는 변수 {var}")
            if coef != 0:
                row[self._index[var]] = row.get(self._index[var], 0.0) + float(coef)
        self._rows.append((row, sense, float(rhs), family, name))

    def build(self) -> MilpProblem:
        n = len(self._names)
        matrix = np.zeros((len(self._rows), n))
        for i, (row, _, _, _, _) in enumerate(self._rows):
            for j, coef in row.items():
                matrix[i, j] = coef
        return MilpProblem(
            objective=np.array(self._cost, dtype=float),
            matrix=matrix,
            senses=tuple(r[1] for r in self._rows),
            rhs=np.array([r[2] for r in self._rows], dtype=float),
            lower=np.array(self._lower, dtype=float),
            upper=np.array(self._upper, dtype=float),
            kinds=tuple(self._kinds),
            names=tuple(self._names),
            row_families=tuple(r[3] for r in self._rows),
            row_names=tuple(r[4] for r in self._rows),
        )


def count_var(resource: str) -> str:
    return f"n_{resource}"


def step_var(prefix: str, t: int) -> str:
    return f"{prefix}[{t}]"


STEP_PREFIXES = ("e", "p_charge", "p_discharge", "p_curtail")
BINARY_PREFIXES = ("u_charge", "u_discharge")


def assemble_milp(scenario: SizingScenario) -> MilpProblem:
    """시나리오 → 사이징 MILP (T=24에서 변수 150개, 행 171개)"""
    scenario.check_profiles()
    T = scenario.horizon
    bess = scenario.bess
    costs = scenario.costs
    b = MilpBuilder()

    for r in RESOURCES:
        b.add_var(count_var(r), VarKind.INTEGER, 0, scenario.count_upper_bounds[r],
                  costs.unit_lifetime_cost(r))
    capacity = math.inf if bess.capacity_limit is None else bess.capacity_limit
    b.add_var("e_bess", VarKind.CONTINUOUS, 0, capacity, costs.unit_lifetime_cost("bess"))
    b.add_var("e_initial")

    for prefix in STEP_PREFIXES:
        for t in range(T):
            upper = 0.0 if prefix == "p_curtail" and not scenario.curtailment else math.inf
            b.add_var(step_var(prefix, t), upper=upper)
    for prefix in BINARY_PREFIXES:
        for t in range(T):
            b.add_var(step_var(prefix, t), VarKind.BINARY, 0, 1)

    # 수급 균형
    for t in range(T):
        coeffs = {count_var(r): scenario.generation[r][t] for r in RESOURCES}
        coeffs.update({
            step_var("p_discharge", t): 1.0,
            step_var("p_charge", t): -1.0,
            step_var("p_curtail", t): -1.0,
        })
        b.add_row("balance", f"balance[{t}]", coeffs, "=", scenario.load[t])

    # 저장량 갱신
    for t in range(T):
        previous = "e_initial" if t == 0 else step_var("e", t - 1)
        b.add_row("energy", f"energy[{t}]", {
            step_var("e", t): 1.0,
            previous: -1.0,
            step_var("p_charge", t): -bess.charge_efficiency,
            step_var("p_discharge", t): 1.0 / bess.discharge_efficiency,
        }, "=", 0.0)

    b.add_row("cycle", "cycle", {"e_initial": 1.0, step_var("e", T - 1): -1.0}, "=", 0.0)

    for name, var in [(f"[{t}]", step_var("e", t)) for t in range(T)] + [("[initial]", "e_initial")]:
        b.add_row("soc", f"soc_min{name}", {var: 1.0, "e_bess": -bess.soc_min}, ">=", 0.0)
        b.add_row("soc", f"soc_max{name}", {var: 1.0, "e_bess": -bess.soc_max}, "<=", 0.0)

    for t in range(T):
        b.add_row("exclusion", f"exclusion[{t}]", {
            step_var("u_charge", t): 1.0, step_var("u_discharge", t): 1.0,
        }, "<=", 1.0)
    for t in range(T):
        b.add_row("discharge_limit", f"discharge_limit[{t}]", {
            step_var("p_discharge", t): 1.0, step_var("u_discharge", t): -scenario.p_max_discharge,
        }, "<=", 0.0)
    for t in range(T):
        b.add_row("charge_limit", f"charge_limit[{t}]", {
            step_var("p_charge", t): 1.0, step_var("u_charge", t): -scenario.p_max_charge,
        }, "<=", 0.0)

    return b.build()


def expected_shape(horizon: int) -> Tuple[int, int]:
    """(변수 수, 행 수)"""
    return 6 + 6 * horizon, 5 * horizon + 1 + 2 * (horizon + 1)


def describe(problem: MilpProblem, horizon: Optional[int] = None) -> str:
    kinds = problem.kind_counts()
    parts = [f"변수 {problem.n_vars}개 (정수 {kinds.get('integer', 0)}, "
             f"연속 {kinds.get('continuous', 0)}, 이진 {kinds.get('binary', 0)})",
             f"제약 {problem.n_rows}행"]
    if horizon is not None:
        parts.append(f"T={horizon}")
    return ", ".join(parts)
