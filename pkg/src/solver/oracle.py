"""소규모 문제용 전수 열거 검증기

정수/이진 열의 모든 조합을 고정하고 남은 LP를 풀어 최소값을 찾는다.
정수 열만 포함한 행을 이미 위반하는 조합은 LP 없이 건너뛴다.
"""

import itertools
import math
import os
import sys
import time
from typing import Mapping, Optional, Tuple

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(__file__)))
from errors import BudgetError
from model import MilpProblem

from .branch_bound import MilpResult, integer_bounds
from .options import INFEASIBLE, OPTIMAL, UNBOUNDED, SolverOptions
from .simplex import solve_lp


DEFAULT_BUDGET = 10_000_000


def enumeration_size(problem: MilpProblem, bounds: Optional[Mapping[str, Tuple[int, int]]] = None) -> int:
    """열거할 조합 수 (Π 범위 크기)"""
    lower, upper = _ranges(problem, bounds)
    size = 1
    for j in problem.integer_columns:
        size *= max(int(upper[j]) - int(lower[j]) + 1, 0)
    return size


def _ranges(problem: MilpProblem, bounds: Optional[Mapping[str, Tuple[int, int]]]):
    lower, upper = integer_bounds(problem)
    for name, (lo, hi) in (bounds or {}).items():
        j = problem.column(name)
        lower[j] = max(lower[j], lo)
        upper[j] = min(upper[j], hi)
    return lower, upper


def brute_force_oracle(problem: MilpProblem, bounds: Optional[Mapping[str, Tuple[int, int]]] = None,
                       options: Optional[SolverOptions] = None, budget: int = DEFAULT_BUDGET) -> MilpResult:
    """정수 조합 전수 열거 + LP. bounds로 열별 열거 범위를 좁힐 수 있음"""
    options = options or SolverOptions()
    started = time.monotonic()
    required = enumeration_size(problem, bounds)
    if required > budget:
        raise BudgetError(required, budget)

    columns = problem.integer_columns
    lower, upper = _ranges(problem, bounds)
    ranges = [range(int(lower[j]), int(upper[j]) + 1) for j in columns]

    # 정수 열만 쓰는 행은 조합 단계에서 먼저 검사
    others = [j for j in range(problem.n_vars) if j not in set(columns)]
    integer_rows = [i for i in range(problem.n_rows) if not np.any(problem.matrix[i, others])]
    sub_matrix = problem.matrix[np.ix_(integer_rows, columns)]
    sub_rhs = problem.rhs[integer_rows]
    sub_senses = [problem.senses[i] for i in integer_rows]
    tol = options.feasibility_tol

    print(f"[Oracle] 조합 {required:,}개 열거 (정수 전용 행 {len(integer_rows)}개 선검사)")
    best_x, best = None, math.inf
    solved = 0
    iterations = 0
    for combo in itertools.product(*ranges):
        values = np.array(combo, dtype=float)
        if integer_rows and not _rows_satisfied(sub_matrix @ values, sub_rhs, sub_senses, tol):
            continue
        lo, hi = lower.copy(), upper.copy()
        lo[columns] = values
        hi[columns] = values
        lp = solve_lp(problem, options, lo, hi)
        solved += 1
        iterations += lp.iterations
        if lp.status == UNBOUNDED:
            return MilpResult(UNBOUNDED, None, -math.inf, -math.inf, solved, iterations,
                              elapsed=time.monotonic() - started, message="고정 조합의 LP가 비유계")
        if lp.optimal and lp.objective < best:
            best_x, best = lp.x, lp.objective

    elapsed = time.monotonic() - started
    print(f"[Oracle] LP {solved}회, 최적값 {best:,.4f}")
    if best_x is None:
        return MilpResult(INFEASIBLE, None, math.inf, math.inf, solved, iterations, elapsed=elapsed)
    return MilpResult(OPTIMAL, best_x, best, best, solved, iterations, elapsed=elapsed)


def _rows_satisfied(lhs: np.ndarray, rhs: np.ndarray, senses, tol: float) -> bool:
    for value, target, sense in zip(lhs, rhs, senses):
        scale = tol * max(1.0, abs(target))
        if sense == "=" and abs(value - target) > scale:
            return False
        if sense == "<=" and value > target + scale:
            return False
        if sense == ">=" and value < target - scale:
            return False
    return True

