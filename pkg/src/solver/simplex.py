"""밀집 타블로 2단계 심플렉스

변수를 하한(또는 상한) 기준으로 옮겨 y ≥ 0 으로 만들고, 유한 상한은 행으로 추가한다.
≤ 행에는 여유변수, ≥ 행에는 잉여변수 + 인공변수, = 행에는 인공변수를 붙인다.
1단계에서 인공변수 합을 최소화하고, 2단계에서 원래 목적함수를 최소화한다.
"""

import os
import sys
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(__file__)))
from errors import PivotError, SolverError
from model import MilpProblem

from .options import INFEASIBLE, OPTIMAL, UNBOUNDED, SolverOptions


@dataclass(frozen=True)
class LpSolution:
    status: str
    x: Optional[np.ndarray]
    objective: float
    iterations: int
    basis_size: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class Tableau:
    """min cᵀy, My = rhs (rhs ≥ 0), y ≥ 0 의 타블로. 마지막 행은 축소비용, 마지막 열은 RHS"""

    def __init__(self, matrix: np.ndarray, rhs: np.ndarray, basis: List[int], options: SolverOptions):
        m, n = matrix.shape
        self.table = np.zeros((m + 1, n + 1))
        self.table[:m, :n] = matrix
        self.table[:m, n] = rhs
        self.basis = list(basis)
        self.options = options
        self.iterations = 0
        self.cost_scale = 1.0

    @property
    def n_rows(self) -> int:
        return self.table.shape[0] - 1

    @property
    def objective_value(self) -> float:
        return -self.table[-1, -1]

    def set_costs(self, costs: np.ndarray):
        """축소비용 행을 현재 기저에 맞춰 다시 계산"""
        self.table[-1, :] = 0.0
        self.table[-1, :len(costs)] = costs
        for i, j in enumerate(self.basis):
            if self.table[-1, j] != 0:
                self.table[-1, :] -= self.table[-1, j] * self.table[i, :]
        self.cost_scale = max(1.0, float(np.max(np.abs(costs), initial=0.0)))

    def pivot(self, row: int, col: int):
        value = self.table[row, col]
        if not np.isfinite(value) or abs(value) < self.options.pivot_tol:
            raise PivotError(row, col, float(value))
        self.table[row, :] /= value
        factors = self.table[:, col].copy()
        factors[row] = 0.0
        self.table -= np.outer(factors, self.table[row, :])
        self.table[:, col] = 0.0
        self.table[row, col] = 1.0
        self.basis[row] = col
        self.iterations += 1

    def ratio_test(self, col: int) -> Optional[int]:
        """최소비 행 (동률이면 기저 변수 번호가 가장 작은 행)"""
        column = self.table[:-1, col]
        eligible = np.flatnonzero(column > self.options.pivot_tol)
        if eligible.size == 0:
            return None
        ratios = np.maximum(self.table[eligible, -1], 0.0) / column[eligible]
        best = ratios.min()
        ties = eligible[ratios <= best + 1e-12 * max(1.0, abs(best))]
        return int(min(ties, key=lambda i: self.basis[i]))

    def run(self) -> str:
        """Dantzig 규칙, 비개선 피벗이 bland_after번 이어지면 Bland 규칙으로 전환"""
        tol = self.options.optimality_tol * self.cost_scale
        stalled = 0
        bland = False
        while True:
            reduced = self.table[-1, :-1]
            candidates = np.flatnonzero(reduced < -tol)
            if candidates.size == 0:
                return OPTIMAL
            if self.iterations >= self.options.max_pivots:
                raise SolverError(f"심플렉스 반복 한도 초과: {self.options.max_pivots}")
            col = int(candidates[0]) if bland else int(candidates[np.argmin(reduced[candidates])])
            row = self.ratio_test(col)
            if row is None:
                return UNBOUNDED
            before = self.objective_value
            self.pivot(row, col)
            if before - self.objective_value > 1e-12 * max(1.0, abs(before)):
                stalled = 0
            else:
                stalled += 1
                if stalled >= self.options.bland_after:
                    bland = True

    def drive_out(self, first_artificial: int) -> List[int]:
        """0 수준 인공변수를 기저에서 빼고, 뺄 수 없는 행(중복 행) 번호 반환"""
        redundant = []
        for i in range(self.n_rows):
            if self.basis[i] < first_artificial:
                continue
            row = self.table[i, :first_artificial]
            candidates = np.flatnonzero(np.abs(row) > self.options.pivot_tol)
            if candidates.size == 0:
                redundant.append(i)
                continue
            self.pivot(i, int(candidates[np.argmax(np.abs(row[candidates]))]))
        return redundant

    def drop(self, rows: List[int], first_column: int):
        """행과 first_column 이후 열(인공변수)을 제거"""
        dropped = set(rows)
        keep_rows = [i for i in range(self.n_rows) if i not in dropped]
        self.basis = [self.basis[i] for i in keep_rows]
        body = self.table[keep_rows + [self.n_rows], :]
        self.table = np.hstack([body[:, :first_column], body[:, -1:]])

    def primal(self, n_columns: int) -> np.ndarray:
        y = np.zeros(n_columns)
        for i, j in enumerate(self.basis):
            if j < n_columns:
                y[j] = self.table[i, -1]
        return np.maximum(y, 0.0)


def _standard_form(problem: MilpProblem, lower: np.ndarray, upper: np.ndarray, feas_tol: float):
    """y ≥ 0 표준형으로 변환. x = offset + Σ sign·y"""
    A = problem.matrix
    c = problem.objective
    n = problem.n_vars
    offset = np.zeros(n)
    columns: List[Tuple[int, float]] = []
    widths: List[Tuple[int, float]] = []
    for j in range(n):
        lo, hi = lower[j], upper[j]
        if np.isfinite(lo) and np.isfinite(hi) and hi - lo <= feas_tol:
            offset[j] = lo
        elif np.isfinite(lo):
            offset[j] = lo
            columns.append((j, 1.0))
            if np.isfinite(hi):
                widths.append((len(columns) - 1, hi - lo))
        elif np.isfinite(hi):
            offset[j] = hi
            columns.append((j, -1.0))
        else:
            columns.append((j, 1.0))
            columns.append((j, -1.0))

    m = problem.n_rows
    ny = len(columns)
    matrix = np.zeros((m + len(widths), ny))
    for k, (j, sign) in enumerate(columns):
        matrix[:m, k] = sign * A[:, j]
    for r, (k, width) in enumerate(widths):
        matrix[m + r, k] = 1.0
    rhs = np.concatenate([problem.rhs - A @ offset, [w for _, w in widths]])
    senses = list(problem.senses) + ["<="] * len(widths)
    costs = np.array([sign * c[j] for j, sign in columns])
    return matrix, rhs, senses, costs, columns, offset


def _empty_row_feasible(sense: str, rhs: float, tol: float) -> bool:
    if sense == "=":
        return abs(rhs) <= tol
    if sense == "<=":
        return rhs >= -tol
    return rhs <= tol


def solve_lp(problem: MilpProblem, options: Optional[SolverOptions] = None,
             lower: Optional[np.ndarray] = None, upper: Optional[np.ndarray] = None) -> LpSolution:
    """정수 조건을 무시한 LP 완화 풀이. lower/upper로 변수 범위를 덮어쓸 수 있음"""
    options = options or SolverOptions()
    lower = np.array(problem.lower if lower is None else lower, dtype=float)
    upper = np.array(problem.upper if upper is None else upper, dtype=float)
    feas = options.feasibility_tol
    if np.any(lower > upper + feas):
        return LpSolution(INFEASIBLE, None, np.inf, 0)

    matrix, rhs, senses, costs, columns, offset = _standard_form(problem, lower, upper, feas)

    # 변수가 모두 고정된 행은 바로 판정
    keep = []
    for i in range(matrix.shape[0]):
        if np.any(matrix[i] != 0):
            keep.append(i)
        elif not _empty_row_feasible(senses[i], rhs[i], feas * max(1.0, abs(rhs[i]))):
            return LpSolution(INFEASIBLE, None, np.inf, 0)
    matrix, rhs, senses = matrix[keep], rhs[keep], [senses[i] for i in keep]

    flip = rhs < 0
    matrix[flip] *= -1
    rhs = np.abs(rhs)
    senses = [{"<=": ">=", ">=": "<="}.get(s, s) if f else s for s, f in zip(senses, flip)]

    m, ny = matrix.shape
    n_slack = sum(1 for s in senses if s != "=")
    n_art = sum(1 for s in senses if s != "<=")
    full = np.zeros((m, ny + n_slack + n_art))
    full[:, :ny] = matrix
    basis = []
    art_rows = []
    slack = ny
    art = ny + n_slack
    for i, sense in enumerate(senses):
        if sense == "<=":
            full[i, slack] = 1.0
            basis.append(slack)
            slack += 1
            continue
        if sense == ">=":
            full[i, slack] = -1.0
            slack += 1
        full[i, art] = 1.0
        basis.append(art)
        art_rows.append(i)
        art += 1

    tableau = Tableau(full, rhs, basis, options)
    first_artificial = ny + n_slack

    if n_art:
        phase1 = np.zeros(first_artificial + n_art)
        phase1[first_artificial:] = 1.0
        tableau.set_costs(phase1)
        tableau.run()
        # 인공변수마다 자기 행의 RHS 크기로만 허용 오차를 잡음
        for i, j in enumerate(tableau.basis):
            if j >= first_artificial:
                row = art_rows[j - first_artificial]
                if tableau.table[i, -1] > feas * max(1.0, rhs[row]):
                    return LpSolution(INFEASIBLE, None, np.inf, tableau.iterations)
        redundant = tableau.drive_out(first_artificial)
        tableau.drop(redundant, first_artificial)

    phase2 = np.zeros(first_artificial)
    phase2[:ny] = costs
    tableau.set_costs(phase2)
    status = tableau.run()
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, None, -np.inf, tableau.iterations)

    y = tableau.primal(ny)
    x = offset.copy()
    for k, (j, sign) in enumerate(columns):
        x[j] += sign * y[k]
    x = np.clip(x, lower, upper)
    if not rows_satisfied(problem, x, feas):
        return LpSolution(INFEASIBLE, None, np.inf, tableau.iterations)
    return LpSolution(OPTIMAL, x, float(problem.objective @ x), tableau.iterations, tableau.n_rows)


def rows_satisfied(problem: MilpProblem, x: np.ndarray, feas_tol: float) -> bool:
    """행별 위반량 ≤ feas_tol × max(1, |b_i|, Σ|a_ij x_j|)"""
    activity = np.abs(problem.matrix) @ np.abs(x)
    scale = np.maximum(1.0, np.maximum(np.abs(problem.rhs), activity))
    return bool(np.all(problem.residuals(x) <= feas_tol * scale))
