"""분기한정법과 전수 열거 검증기 테스트"""

import math
from dataclasses import replace

import numpy as np
import pytest

from conftest import toy_scenario
from errors import BudgetError, ParameterError
from model import (
    MilpBuilder, SizingSolution, VarKind, assemble_milp, energy_telescoping, validate_solution,
)
from solver import (
    INFEASIBLE, NODE_LIMIT, OPTIMAL, SolverOptions, brute_force_oracle, enumeration_size,
    most_fractional, relative_gap, solve_milp,
)


def _solve(scenario, options=None):
    problem = assemble_milp(scenario)
    result = solve_milp(problem, options)
    return problem, result


class TestToyInstances:

    def test_two_hour_toy(self, toy_two_hour):
        problem, result = _solve(toy_two_hour)
        solution = SizingSolution.from_result(problem, result)

        assert result.status == OPTIMAL
        assert solution.n_owt == 2
        assert result.objective == pytest.approx(20.0)
        assert solution.p_curtail == pytest.approx((20.0, 20.0))
        assert validate_solution(toy_two_hour, solution).ok

    def test_objective_not_below_root_bound(self, toy_two_hour):
        _, result = _solve(toy_two_hour)
        assert result.root_bound == pytest.approx(100.0 / 6.0)
        assert result.objective >= result.root_bound - 1e-9
        assert result.best_bound <= result.objective + 1e-9

    def test_integral_root_needs_one_node(self):
        scenario = toy_scenario([120.0, 120.0], {"owt": [60.0, 60.0]}, storage=False)
        _, result = _solve(scenario)

        assert result.status == OPTIMAL
        assert result.nodes == 1
        assert result.objective == pytest.approx(20.0)

    def test_zero_load_costs_nothing(self):
        scenario = toy_scenario([0.0] * 3, {"owt": [60.0] * 3, "fpv": [1.0] * 3})
        problem, result = _solve(scenario)
        solution = SizingSolution.from_result(problem, result)

        assert result.objective == pytest.approx(0.0)
        assert sum(solution.counts.values()) == 0
        assert solution.e_bess == pytest.approx(0.0)

    def test_storage_shifts_energy(self):
        # 0시에 충전해 1시 부하 100 kW를 방전으로 공급
        scenario = toy_scenario([100.0, 100.0], {"owt": [150.0, 0.0]}, bess_cost=0.1, p_max=200.0)
        problem, result = _solve(scenario)
        solution = SizingSolution.from_result(problem, result)

        swing = 100.0 / 0.95
        assert solution.n_owt == 2
        assert solution.e_bess == pytest.approx(swing / (0.9 - 0.1))
        assert solution.p_charge[0] == pytest.approx(swing / 0.80)
        assert solution.p_discharge[1] == pytest.approx(100.0)
        assert (solution.u_charge[0], solution.u_discharge[1]) == (1, 1)
        assert result.objective == pytest.approx(20.0 + 0.1 * swing / 0.8)
        assert energy_telescoping(scenario, solution) == pytest.approx(0.0, abs=1e-6)
        assert validate_solution(scenario, solution).ok

    def test_storage_disabled_is_infeasible(self):
        scenario = toy_scenario([100.0, 100.0], {"owt": [150.0, 0.0]}, storage=False)
        _, result = _solve(scenario)
        assert result.status == INFEASIBLE
        assert not result.has_incumbent

    def test_no_integer_point_without_curtailment(self):
        scenario = toy_scenario([100.0, 100.0], {"owt": [60.0, 60.0]}, storage=False, curtailment=False)
        problem, result = _solve(scenario)

        assert result.status == INFEASIBLE
        assert brute_force_oracle(problem).status == INFEASIBLE

    def test_small_shortfall_with_wide_fpv_bound_is_infeasible(self):
        # 부족분 0.03 kW, FPV 상한 1e6은 판정에 영향 없어야 함
        scenario = toy_scenario([100.03, 100.03], {"owt": [100.0, 100.0]}, storage=False,
                                bounds={"owt": 1, "fpv": 1_000_000})
        _, result = _solve(scenario)
        assert result.status == INFEASIBLE

    def test_generation_matching_load_needs_no_storage(self):
        scenario = toy_scenario([60.0, 120.0], {"owt": [30.0, 60.0]}, bounds={"owt": 2})
        problem, result = _solve(scenario)
        solution = SizingSolution.from_result(problem, result)

        assert result.status == OPTIMAL
        assert solution.n_owt == 2
        assert solution.e_bess == pytest.approx(0.0, abs=1e-9)
        assert solution.p_curtail == pytest.approx((0.0, 0.0), abs=1e-9)
        assert result.objective == pytest.approx(20.0)

    def test_curtailment_only_relaxes(self):
        kwargs = dict(load=[100.0, 40.0], generation={"owt": [60.0, 60.0], "fpv": [20.0, 10.0]})
        _, with_curtail = _solve(toy_scenario(**kwargs, bounds={"owt": 3, "fpv": 5}))
        _, without = _solve(toy_scenario(**kwargs, bounds={"owt": 3, "fpv": 5}, curtailment=False))
        assert without.status != OPTIMAL or without.objective >= with_curtail.objective - 1e-9

    def test_cost_scaling(self, toy_two_hour):
        scaled = replace(toy_two_hour, costs=toy_two_hour.costs.scaled(3.0))
        problem, base = _solve(toy_two_hour)
        scaled_problem, tripled = _solve(scaled)

        assert tripled.objective == pytest.approx(3 * base.objective)
        assert SizingSolution.from_result(scaled_problem, tripled).counts == \
            SizingSolution.from_result(problem, base).counts


class TestLimits:

    def test_node_limit_keeps_seeded_incumbent(self, toy_two_hour):
        _, result = _solve(toy_two_hour, SolverOptions(node_limit=1))

        assert result.status == NODE_LIMIT
        assert result.has_incumbent
        assert result.objective == pytest.approx(20.0)
        assert result.gap > 0

    def test_node_limit_without_seed(self, toy_two_hour):
        _, result = _solve(toy_two_hour, SolverOptions(node_limit=1, seed_incumbent=False))

        assert result.status == NODE_LIMIT
        assert not result.has_incumbent
        assert result.gap == math.inf

    def test_unbounded_integer_column_rejected(self):
        builder = MilpBuilder()
        builder.add_var("n", VarKind.INTEGER, 0, math.inf, 1.0)
        with pytest.raises(ParameterError):
            solve_milp(builder.build())

    def test_oracle_budget(self, toy_two_hour):
        problem = assemble_milp(toy_two_hour)

        assert enumeration_size(problem) == 6 * 2 ** 4
        with pytest.raises(BudgetError) as excinfo:
            brute_force_oracle(problem, budget=10)
        assert excinfo.value.exit_code == 4
        assert excinfo.value.required == 96

    def test_oracle_bounds_narrow_search(self, toy_two_hour):
        problem = assemble_milp(toy_two_hour)
        result = brute_force_oracle(problem, bounds={"n_owt": (2, 2)})

        assert enumeration_size(problem, {"n_owt": (2, 2)}) == 16
        assert result.objective == pytest.approx(20.0)


def test_helpers():
    assert relative_gap(20.0, 16.0) == pytest.approx(0.2)
    assert relative_gap(0.5, 0.0) == pytest.approx(0.5)
    assert relative_gap(10.0, 12.0) == 0.0
    assert relative_gap(math.inf, 1.0) == math.inf

    x = np.array([1.0, 2.4, 3.5, 0.9999999])
    assert most_fractional(x, [0, 1, 2, 3], 1e-6) == 2
    assert most_fractional(x, [0, 3], 1e-6) is None


def _random_scenario(rng, horizon):
    """자원 2종, 수량 상한 ≤ 4, 저장 켜고/끄기 혼합"""
    resources = [str(r) for r in rng.choice(["wec", "tec", "owt", "fpv"], size=2, replace=False)]
    generation = {r: [float(v) for v in rng.integers(0, 60, size=horizon)] for r in resources}
    return toy_scenario(
        load=[float(v) for v in rng.integers(10, 120, size=horizon)],
        generation=generation,
        unit_costs={r: float(rng.uniform(5.0, 20.0)) for r in resources},
        bess_cost=float(rng.uniform(0.05, 2.0)),
        storage=bool(rng.random() < 0.6),
        curtailment=bool(rng.random() < 0.8),
        bounds={r: int(rng.integers(1, 5)) for r in resources},
        p_max=float(rng.integers(20, 80)),
    )


def _assert_agree(scenario):
    problem = assemble_milp(scenario)
    options = SolverOptions(gap=1e-9)
    milp = solve_milp(problem, options)
    oracle = brute_force_oracle(problem, options=options)

    assert (milp.status == INFEASIBLE) == (oracle.status == INFEASIBLE)
    if oracle.status == OPTIMAL:
        assert milp.status == OPTIMAL
        assert milp.objective == pytest.approx(oracle.objective, rel=1e-6, abs=1e-6)
        assert validate_solution(scenario, SizingSolution.from_result(problem, milp)).ok


@pytest.mark.parametrize("seed", range(100))
def test_matches_exhaustive_enumeration(seed):
    rng = np.random.default_rng(20240 + seed)
    # T=4는 조합이 최대 25 × 2⁸이라 일부만
    horizon = 2 if seed < 55 else 3 if seed < 85 else 4
    _assert_agree(_random_scenario(rng, horizon))


def test_four_hour_instance_matches_enumeration():
    scenario = toy_scenario(
        load=[80.0, 120.0, 60.0, 100.0],
        generation={"owt": [70.0, 10.0, 50.0, 30.0], "fpv": [0.0, 40.0, 20.0, 35.0]},
        unit_costs={"owt": 12.0, "fpv": 7.0},
        bess_cost=0.3,
        bounds={"owt": 3, "fpv": 3},
        p_max=60.0,
    )
    _assert_agree(scenario)
