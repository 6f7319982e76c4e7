"""최선 하한 우선 분기한정법 (LP 완화는 simplex.solve_lp)"""

import heapq
import math
import os
import sys
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(__file__)))
from errors import ParameterError
from model import MilpProblem, VarKind

from .options import INFEASIBLE, NODE_LIMIT, OPTIMAL, TIME_LIMIT, UNBOUNDED, SolverOptions
from .simplex import LpSolution, solve_lp


@dataclass(frozen=True)
class BranchNode:
    """분기 결정이 반영된 변수 범위와 부모 LP 하한"""
    lower: np.ndarray
    upper: np.ndarray
    parent_bound: float
    depth: int
    branch_column: Optional[int] = None


@dataclass
class MilpResult:
    status: str
    x: Optional[np.ndarray]
    objective: float
    best_bound: float
    nodes: int
    lp_iterations: int
    root_bound: float = math.nan
    elapsed: float = 0.0
    message: str = ""

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL

    @property
    def has_incumbent(self) -> bool:
        return self.x is not None

    @property
    def gap(self) -> float:
        return relative_gap(self.objective, self.best_bound)

    def diagnostics(self) -> Dict[str, float]:
        return {
            "nodes": self.nodes,
            "lp_iterations": self.lp_iterations,
            "gap": self.gap,
            "best_bound": self.best_bound,
            "root_bound": self.root_bound,
        }


def relative_gap(incumbent: float, bound: float) -> float:
    if not math.isfinite(incumbent):
        return math.inf
    if not math.isfinite(bound):
        return math.inf
    return max(incumbent - bound, 0.0) / max(abs(incumbent), 1.0)


def integer_bounds(problem: MilpProblem) -> Tuple[np.ndarray, np.ndarray]:
    """정수 열의 범위를 정수로 조임 (ceil 하한, floor 상한)"""
    lower = np.array(problem.lower, dtype=float)
    upper = np.array(problem.upper, dtype=float)
    for j in problem.integer_columns:
        if not (np.isfinite(lower[j]) and np.isfinite(upper[j])):
            raise ParameterError(f"정수 변수 {problem.names[j]}의 범위가 유한하지 않음")
        lower[j] = math.ceil(lower[j] - 1e-9)
        upper[j] = math.floor(upper[j] + 1e-9)
    return lower, upper


def most_fractional(x: np.ndarray, columns: List[int], tol: float) -> Optional[int]:
    """소수부가 0.5에 가장 가까운 정수 열 (동률이면 번호가 작은 열)"""
    best, best_frac = None, tol
    for j in columns:
        frac = abs(x[j] - round(x[j]))
        if frac > best_frac:
            best, best_frac = j, frac
    return best


def _fix_integers(x: np.ndarray, columns: List[int], lower: np.ndarray,
                  upper: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    lo, hi = lower.copy(), upper.copy()
    for j in columns:
        value = min(max(round(x[j]), lower[j]), upper[j])
        lo[j] = hi[j] = value
    return lo, hi


def solve_milp(problem: MilpProblem, options: Optional[SolverOptions] = None) -> MilpResult:
    """최선 하한 노드 선택(동률은 깊은 노드 먼저), 최대 소수부 열 분기"""
    options = options or SolverOptions()
    started = time.monotonic()
    columns = problem.integer_columns
    lower, upper = integer_bounds(problem)
    iterations = 0
    nodes = 0

    def relax(lo: np.ndarray, hi: np.ndarray, node: bool = True) -> LpSolution:
        nonlocal iterations, nodes
        lp = solve_lp(problem, options, lo, hi)
        iterations += lp.iterations
        nodes += int(node)
        return lp

    def finish(status, x, objective, bound, message=""):
        result = MilpResult(status, x, objective, bound, nodes, iterations, root_bound,
                            time.monotonic() - started, message)
        print(f"[B&B] {status}: 목적함수 {objective:,.4f}, 노드 {nodes}, 피벗 {iterations}, "
              f"gap {result.gap:.2e}")
        return result

    root = relax(lower, upper)
    root_bound = root.objective
    if root.status == INFEASIBLE:
        return finish(INFEASIBLE, None, math.inf, math.inf, "LP 완화가 불능")
    if root.status == UNBOUNDED:
        return finish(UNBOUNDED, None, -math.inf, -math.inf, "LP 완화가 비유계")

    incumbent_x: Optional[np.ndarray] = None
    incumbent = math.inf

    def polish(x: np.ndarray) -> Tuple[Optional[np.ndarray], float]:
        """정수 열을 반올림해 고정하고 연속 변수를 다시 풂"""
        lo, hi = _fix_integers(x, columns, lower, upper)
        lp = relax(lo, hi, node=False)
        if lp.optimal:
            return lp.x, lp.objective
        return None, math.inf

    def dive(x: np.ndarray) -> Tuple[Optional[np.ndarray], float]:
        """일반 정수 열은 올림 고정, 남은 소수 열은 하나씩 반올림 고정하며 LP 재풀이"""
        lo, hi = lower.copy(), upper.copy()
        for j in columns:
            if problem.kinds[j] == VarKind.INTEGER:
                lo[j] = hi[j] = min(max(math.ceil(x[j] - options.integrality_tol), lower[j]), upper[j])
        for _ in range(len(columns) + 1):
            lp = relax(lo, hi, node=False)
            if not lp.optimal:
                return None, math.inf
            j = most_fractional(lp.x, columns, options.integrality_tol)
            if j is None:
                return polish(lp.x)
            lo[j] = hi[j] = min(max(round(lp.x[j]), lower[j]), upper[j])
        return None, math.inf

    if most_fractional(root.x, columns, options.integrality_tol) is None:
        x = root.x.copy()
        x[columns] = np.round(x[columns])
        value = float(problem.objective @ x)
        return finish(OPTIMAL, x, value, min(root_bound, value))

    if options.seed_incumbent:
        incumbent_x, incumbent = dive(root.x)
        if incumbent_x is not None:
            print(f"[B&B] 다이빙 초기해: {incumbent:,.4f}")

    def cutoff() -> float:
        return incumbent - options.gap * max(abs(incumbent), 1.0)

    # (하한, -깊이, 순번): 하한이 같으면 깊은 노드, 그다음 먼저 만든 노드
    heap: List[Tuple[float, int, int, BranchNode, LpSolution]] = []
    sequence = 0
    heapq.heappush(heap, (root_bound, 0, sequence, BranchNode(lower, upper, -math.inf, 0), root))
    status = OPTIMAL
    bound = root_bound

    while heap:
        if options.node_limit is not None and nodes >= options.node_limit:
            status = NODE_LIMIT
            break
        if options.time_limit is not None and time.monotonic() - started > options.time_limit:
            status = TIME_LIMIT
            break

        bound, _, _, node, lp = heap[0]
        if incumbent_x is not None and bound >= cutoff():
            break
        heapq.heappop(heap)

        j = most_fractional(lp.x, columns, options.integrality_tol)
        if j is None:
            if lp.objective < incumbent:
                x, value = polish(lp.x)
                if x is not None and value < incumbent:
                    incumbent_x, incumbent = x, value
            continue

        for side in ("down", "up"):
            lo, hi = node.lower.copy(), node.upper.copy()
            if side == "down":
                hi[j] = math.floor(lp.x[j])
            else:
                lo[j] = math.ceil(lp.x[j])
            if lo[j] > hi[j]:
                continue
            child_lp = relax(lo, hi)
            if not child_lp.optimal:
                continue
            child_bound = max(child_lp.objective, bound)
            if incumbent_x is not None and child_bound >= cutoff():
                continue
            sequence += 1
            child = BranchNode(lo, hi, bound, node.depth + 1, j)
            heapq.heappush(heap, (child_bound, -child.depth, sequence, child, child_lp))

    if heap:
        bound = min(heap[0][0], incumbent)
    else:
        bound = incumbent

    if incumbent_x is None:
        if status == OPTIMAL:
            return finish(INFEASIBLE, None, math.inf, math.inf, "정수 실행가능해 없음")
        return finish(status, None, math.inf, bound, "한도 내 정수해를 찾지 못함")
    if status != OPTIMAL and relative_gap(incumbent, bound) <= options.gap:
        status = OPTIMAL
    return finish(status, incumbent_x, incumbent, bound)
