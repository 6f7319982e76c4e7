"""사이징 해와 독립 검증"""

import math
import os
import sys
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(__file__)))
from errors import FormatError
from projection import RESOURCES

from .costs import cost_breakdown, total_cost
from .milp import MilpProblem, count_var, step_var
from .scenario import SizingScenario


DEFAULT_TOLERANCE = 1e-6
OBJECTIVE_TOLERANCE = 1e-9

CHECK_FAMILIES = ("bounds", "balance", "energy", "cycle", "soc", "exclusion", "discharge_limit", "charge_limit")


@dataclass(frozen=True)
class SizingSolution:
    """자원별 수량, BESS 용량, 시간별 운전 계획, 목적함수 값"""
    n_wec: int
    n_tec: int
    n_owt: int
    n_fpv: int
    e_bess: float
    e_initial: float
    energy: Tuple[float, ...]
    p_charge: Tuple[float, ...]
    p_discharge: Tuple[float, ...]
    p_curtail: Tuple[float, ...]
    u_charge: Tuple[int, ...]
    u_discharge: Tuple[int, ...]
    objective: float
    status: str = "optimal"
    diagnostics: Dict[str, float] = field(default_factory=dict)

    @property
    def counts(self) -> Dict[str, int]:
        return {r: getattr(self, f"n_{r}") for r in RESOURCES}

    @property
    def horizon(self) -> int:
        return len(self.energy)

    @classmethod
    def from_assignment(cls, problem: MilpProblem, x: np.ndarray, objective: float,
                        status: str = "optimal", diagnostics: Optional[Mapping] = None) -> "SizingSolution":
        """솔버 해 벡터를 이름으로 풀어냄 (정수 변수는 반올림)"""
        horizon = sum(1 for name in problem.names if name.startswith("e["))

        def value(name: str) -> float:
            return float(x[problem.column(name)])

        def series(prefix: str) -> Tuple[float, ...]:
            return tuple(max(value(step_var(prefix, t)), 0.0) for t in range(horizon))

        def flags(prefix: str) -> Tuple[int, ...]:
            return tuple(int(round(value(step_var(prefix, t)))) for t in range(horizon))

        counts = {f"n_{r}": int(round(value(count_var(r)))) for r in RESOURCES}
        return cls(
            **counts,
            e_bess=max(value("e_bess"), 0.0),
            e_initial=max(value("e_initial"), 0.0),
            energy=series("e"),
            p_charge=series("p_charge"),
            p_discharge=series("p_discharge"),
            p_curtail=series("p_curtail"),
            u_charge=flags("u_charge"),
            u_discharge=flags("u_discharge"),
            objective=float(objective),
            status=status,
            diagnostics=dict(diagnostics or {}),
        )

    @classmethod
    def from_result(cls, problem: MilpProblem, result) -> "SizingSolution":
        """solve_milp/brute_force_oracle 결과에서 생성"""
        return cls.from_assignment(problem, result.x, result.objective, result.status, result.diagnostics())

    def to_dict(self) -> Dict:
        data = asdict(self)
        for key in ("energy", "p_charge", "p_discharge", "p_curtail", "u_charge", "u_discharge"):
            data[key] = list(data[key])
        return data

    @classmethod
    def from_dict(cls, data: Mapping) -> "SizingSolution":
        try:
            return cls(
                n_wec=data["n_wec"], n_tec=data["n_tec"], n_owt=data["n_owt"], n_fpv=data["n_fpv"],
                e_bess=float(data["e_bess"]),
                e_initial=float(data["e_initial"]),
                energy=tuple(float(v) for v in data["energy"]),
                p_charge=tuple(float(v) for v in data["p_charge"]),
                p_discharge=tuple(float(v) for v in data["p_discharge"]),
                p_curtail=tuple(float(v) for v in data["p_curtail"]),
                u_charge=tuple(data["u_charge"]),
                u_discharge=tuple(data["u_discharge"]),
                objective=float(data["objective"]),
                status=data.get("status", "optimal"),
                diagnostics=dict(data.get("diagnostics", {})),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise FormatError(f"해 문서 형식 오류: {e}")


@dataclass(frozen=True)
class FamilyCheck:
    """제약 계열별 최대 상대 위반량"""
    family: str
    max_violation: float
    worst_row: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: Tuple[FamilyCheck, ...]
    objective_reported: float
    objective_recomputed: float
    tolerance: float = DEFAULT_TOLERANCE
    objective_tolerance: float = OBJECTIVE_TOLERANCE

    @property
    def objective_discrepancy(self) -> float:
        return abs(self.objective_reported - self.objective_recomputed)

    @property
    def objective_relative_discrepancy(self) -> float:
        return self.objective_discrepancy / max(abs(self.objective_recomputed), 1.0)

    def check(self, family: str) -> FamilyCheck:
        return next(c for c in self.checks if c.family == family)

    def violations(self) -> List[FamilyCheck]:
        return [c for c in self.checks if c.max_violation > self.tolerance]

    @property
    def objective_ok(self) -> bool:
        return self.objective_relative_discrepancy <= self.objective_tolerance

    @property
    def ok(self) -> bool:
        return not self.violations() and self.objective_ok

    def to_dict(self) -> Dict:
        return {
            "ok": self.ok,
            "tolerance": self.tolerance,
            "families": {c.family: {"max_violation": c.max_violation, "worst_row": c.worst_row}
                         for c in self.checks},
            "objective": {
                "reported": self.objective_reported,
                "recomputed": self.objective_recomputed,
                "discrepancy": self.objective_discrepancy,
            },
        }

    def format_text(self) -> str:
        lines = [f"{'계열':<16} {'최대 위반':>12}  행"]
        for c in self.checks:
            mark = "✗" if c.max_violation > self.tolerance else "✓"
            lines.append(f"{c.family:<16} {c.max_violation:>12.3e}  {c.worst_row} {mark}")
        mark = "✓" if self.objective_ok else "✗"
        lines.append(
            f"목적함수: 보고 {self.objective_reported:,.2f} / 재계산 {self.objective_recomputed:,.2f} "
            f"(차이 {self.objective_discrepancy:.3e}) {mark}"
        )
        lines.append("결과: " + ("통과" if self.ok else "위반 있음"))
        return "\n".join(lines)


class _Tally:
    """계열별 최대 상대 위반 누적"""

    def __init__(self):
        self.worst: Dict[str, Tuple[float, str]] = {f: (0.0, "") for f in CHECK_FAMILIES}

    def add(self, family: str, row: str, violation: float, *terms: float):
        scale = max([1.0] + [abs(v) for v in terms])
        relative = violation / scale
        if not math.isfinite(relative):
            relative = math.inf
        if relative > self.worst[family][0]:
            self.worst[family] = (relative, row)

    def equal(self, family: str, row: str, terms: List[float], rhs: float):
        self.add(family, row, abs(math.fsum(terms) - rhs), rhs, *terms)

    def at_most(self, family: str, row: str, terms: List[float], rhs: float):
        self.add(family, row, max(math.fsum(terms) - rhs, 0.0), rhs, *terms)

    def checks(self) -> Tuple[FamilyCheck, ...]:
        return tuple(FamilyCheck(f, v, row) for f, (v, row) in self.worst.items())


def validate_solution(scenario: SizingScenario, solution: SizingSolution,
                      tolerance: float = DEFAULT_TOLERANCE) -> ValidationReport:
    """솔버와 무관하게 시나리오 제약을 직접 재계산해 위반량 보고"""
    T = scenario.horizon
    bess = scenario.bess
    tally = _Tally()

    schedules = {"energy": solution.energy, "p_charge": solution.p_charge, "p_discharge": solution.p_discharge,
                 "p_curtail": solution.p_curtail, "u_charge": solution.u_charge,
                 "u_discharge": solution.u_discharge}
    for name, values in schedules.items():
        if len(values) != T:
            tally.add("bounds", f"{name} 길이 {len(values)}", math.inf)
    if tally.worst["bounds"][0] > 0:
        recomputed = total_cost(cost_breakdown(scenario.costs, solution.counts, solution.e_bess))
        return ValidationReport(tally.checks(), solution.objective, recomputed, tolerance)

    # 변수 범위와 정수성
    for r, count in solution.counts.items():
        tally.add("bounds", f"n_{r}", max(-count, count - scenario.count_upper_bounds[r], 0.0))
        tally.add("bounds", f"n_{r} 정수성", abs(count - round(count)))
    tally.add("bounds", "e_bess", max(-solution.e_bess, 0.0))
    if bess.capacity_limit is not None:
        tally.add("bounds", "e_bess 상한", max(solution.e_bess - bess.capacity_limit, 0.0), bess.capacity_limit)
    tally.add("bounds", "e_initial", max(-solution.e_initial, 0.0))
    for name in ("energy", "p_charge", "p_discharge", "p_curtail"):
        for t, v in enumerate(schedules[name]):
            tally.add("bounds", step_var(name, t), max(-v, 0.0))
    if not scenario.curtailment:
        for t, v in enumerate(solution.p_curtail):
            tally.add("bounds", step_var("p_curtail", t), abs(v))
    for name in ("u_charge", "u_discharge"):
        for t, v in enumerate(schedules[name]):
            tally.add("bounds", step_var(name, t), min(abs(v), abs(v - 1)))

    for t in range(T):
        supply = [solution.counts[r] * scenario.generation[r][t] for r in RESOURCES]
        tally.equal("balance", f"balance[{t}]",
                    supply + [solution.p_discharge[t], -solution.p_charge[t], -solution.p_curtail[t]],
                    scenario.load[t])

        previous = solution.e_initial if t == 0 else solution.energy[t - 1]
        tally.equal("energy", f"energy[{t}]", [
            solution.energy[t], -previous,
            -bess.charge_efficiency * solution.p_charge[t],
            solution.p_discharge[t] / bess.discharge_efficiency,
        ], 0.0)

        tally.at_most("exclusion", f"exclusion[{t}]", [solution.u_charge[t], solution.u_discharge[t]], 1.0)
        tally.at_most("discharge_limit", f"discharge_limit[{t}]",
                      [solution.p_discharge[t], -scenario.p_max_discharge * solution.u_discharge[t]], 0.0)
        tally.at_most("charge_limit", f"charge_limit[{t}]",
                      [solution.p_charge[t], -scenario.p_max_charge * solution.u_charge[t]], 0.0)

    tally.equal("cycle", "cycle", [solution.e_initial, -solution.energy[T - 1]], 0.0)

    levels = [(f"[{t}]", v) for t, v in enumerate(solution.energy)] + [("[initial]", solution.e_initial)]
    for label, level in levels:
        tally.at_most("soc", f"soc_min{label}", [bess.soc_min * solution.e_bess, -level], 0.0)
        tally.at_most("soc", f"soc_max{label}", [level, -bess.soc_max * solution.e_bess], 0.0)

    recomputed = total_cost(cost_breakdown(scenario.costs, solution.counts, solution.e_bess))
    return ValidationReport(tally.checks(), solution.objective, recomputed, tolerance)


def energy_telescoping(scenario: SizingScenario, solution: SizingSolution) -> float:
    """Σ(ηc·Pc − Pd/ηd) = E[T−1] − E_init (순환 조건에서 0)"""
    bess = scenario.bess
    return math.fsum(
        bess.charge_efficiency * c - d / bess.discharge_efficiency
        for c, d in zip(solution.p_charge, solution.p_discharge)
    )
