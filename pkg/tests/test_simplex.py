"""2단계 심플렉스 테스트"""

import math

import numpy as np
import pytest

from errors import ConfigError, PivotError, SolverError
from model import MilpBuilder
from solver import INFEASIBLE, OPTIMAL, UNBOUNDED, SolverOptions, Tableau, rows_satisfied, solve_lp


def _lp(variables, rows):
    """variables: [(name, lower, upper, cost)], rows: [(coeffs, sense, rhs)]"""
    builder = MilpBuilder()
    for name, lower, upper, cost in variables:
        builder.add_var(name, lower=lower, upper=upper, cost=cost)
    for i, (coeffs, sense, rhs) in enumerate(rows):
        builder.add_row("balance", f"r{i}", coeffs, sense, rhs)
    return builder.build()


@pytest.fixture
def textbook():
    # max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18
    return _lp(
        [("x", 0, math.inf, -3.0), ("y", 0, math.inf, -5.0)],
        [({"x": 1}, "<=", 4), ({"y": 2}, "<=", 12), ({"x": 3, "y": 2}, "<=", 18)],
    )


def test_textbook_optimum(textbook):
    lp = solve_lp(textbook)

    assert lp.status == OPTIMAL
    assert lp.objective == pytest.approx(-36.0)
    assert lp.x == pytest.approx([2.0, 6.0])
    assert lp.basis_size == 3


def test_nonnegative_costs_give_zero():
    problem = _lp(
        [("x", 0, math.inf, 1.0), ("y", 0, math.inf, 2.0)],
        [({"x": 1, "y": 1}, "<=", 10)],
    )
    lp = solve_lp(problem)
    assert lp.objective == 0.0
    assert lp.iterations == 0


def test_phase_one_with_equality_and_cover_rows():
    problem = _lp(
        [("x", 0, math.inf, 1.0), ("y", 0, math.inf, 1.0)],
        [({"x": 1, "y": 1}, ">=", 2), ({"x": 1, "y": -1}, "=", 0)],
    )
    lp = solve_lp(problem)
    assert lp.objective == pytest.approx(2.0)
    assert lp.x == pytest.approx([1.0, 1.0])


def test_redundant_equality_row_is_dropped():
    problem = _lp(
        [("x", 0, math.inf, 1.0), ("y", 0, math.inf, 0.0)],
        [({"x": 1, "y": 1}, "=", 2), ({"x": 2, "y": 2}, "=", 4)],
    )
    lp = solve_lp(problem)
    assert lp.objective == pytest.approx(0.0)
    assert lp.x[1] == pytest.approx(2.0)
    assert lp.basis_size == 1


def test_infeasible():
    problem = _lp([("x", 0, math.inf, 1.0)], [({"x": 1}, ">=", 5), ({"x": 1}, "<=", 3)])
    lp = solve_lp(problem)
    assert lp.status == INFEASIBLE
    assert lp.x is None
    assert lp.objective == math.inf


def test_unbounded():
    problem = _lp(
        [("x", 0, math.inf, -1.0), ("y", 0, math.inf, 0.0)],
        [({"x": 1, "y": -1}, "<=", 1)],
    )
    assert solve_lp(problem).status == UNBOUNDED


def test_free_and_upper_bounded_variables():
    problem = _lp(
        [("x", -math.inf, math.inf, 1.0), ("y", -math.inf, 5.0, -1.0)],
        [({"x": 1}, ">=", -3)],
    )
    lp = solve_lp(problem)
    assert lp.x == pytest.approx([-3.0, 5.0])
    assert lp.objective == pytest.approx(-8.0)


def test_finite_upper_bounds_become_rows():
    problem = _lp([("x", 1.0, 2.5, -1.0)], [])
    lp = solve_lp(problem)
    assert lp.x == pytest.approx([2.5])


def test_bound_overrides_and_fixed_columns(textbook):
    lp = solve_lp(textbook, lower=np.array([1.0, 0.0]), upper=np.array([1.0, math.inf]))
    assert lp.x == pytest.approx([1.0, 6.0])
    assert lp.objective == pytest.approx(-33.0)


def test_fixed_columns_violating_row():
    problem = _lp([("x", 0, math.inf, 1.0)], [({"x": 1}, "<=", 3)])
    lp = solve_lp(problem, lower=np.array([4.0]), upper=np.array([4.0]))
    assert lp.status == INFEASIBLE


def test_wide_bound_does_not_hide_infeasibility():
    # 무관한 열의 상한 1e6이 다른 행의 허용 오차를 넓히면 안 됨
    rows = [({"x": 1}, "=", 5.0), ({"x": 1}, "=", 5.05)]
    narrow = _lp([("x", 0, math.inf, 1.0)], rows)
    wide = _lp([("x", 0, math.inf, 1.0), ("n", 0, 1e6, 0.0)], rows)

    assert solve_lp(narrow).status == INFEASIBLE
    assert solve_lp(wide).status == INFEASIBLE


def test_optimum_satisfies_rows(textbook):
    lp = solve_lp(textbook)
    assert rows_satisfied(textbook, lp.x, 1e-7)
    assert not rows_satisfied(textbook, np.array([4.0, 6.0]), 1e-7)
    assert textbook.residuals(np.array([4.0, 6.0]))[2] == pytest.approx(6.0)


def test_crossed_bounds_are_infeasible(textbook):
    lp = solve_lp(textbook, lower=np.array([3.0, 0.0]), upper=np.array([2.0, 1.0]))
    assert lp.status == INFEASIBLE


def test_deterministic(textbook):
    first = solve_lp(textbook)
    second = solve_lp(textbook)
    assert np.array_equal(first.x, second.x)
    assert first.iterations == second.iterations


def test_iteration_limit(textbook):
    with pytest.raises(SolverError):
        solve_lp(textbook, SolverOptions(max_pivots=1))


def test_tiny_pivot_rejected():
    tableau = Tableau(np.array([[1e-12, 1.0]]), np.array([1.0]), [1], SolverOptions())
    with pytest.raises(PivotError) as excinfo:
        tableau.pivot(0, 0)
    assert excinfo.value.column == 0


def test_ratio_test_ties_prefer_smaller_basis_index():
    tableau = Tableau(np.array([[1.0, 0.0, 1.0], [1.0, 1.0, 0.0]]), np.array([2.0, 2.0]), [2, 1],
                      SolverOptions())
    assert tableau.ratio_test(0) == 1


class TestOptions:

    def test_from_mapping(self):
        options = SolverOptions.from_mapping({"gap": "1e-4", "node_limit": 50, "time_limit": None})
        assert options.gap == 1e-4
        assert options.node_limit == 50
        assert options.time_limit is None

    def test_overrides_ignore_none(self):
        options = SolverOptions().with_overrides(gap=None, node_limit=7)
        assert options.gap == 1e-6
        assert options.node_limit == 7

    @pytest.mark.parametrize("data", [
        {"tolerance": 1e-6},
        {"gap": 0},
        {"gap": "tight"},
        {"node_limit": True},
        {"time_limit": -1},
        {"seed_incumbent": "yes"},
        {"deterministic": False},
    ])
    def test_invalid(self, data):
        with pytest.raises(ConfigError):
            SolverOptions.from_mapping(data)
