from .costs import (
    SubsystemCost, CostBook, TABLE1, SUBSYSTEMS, subsystem_lifetime_cost, cost_breakdown, total_cost,
)
from .scenario import BessParams, SizingScenario, DEFAULT_COUNT_BOUNDS
from .milp import (
    MilpProblem, MilpBuilder, VarKind, ROW_FAMILIES, assemble_milp, expected_shape, count_var, step_var,
    describe,
)
from .solution import (
    SizingSolution, ValidationReport, FamilyCheck, validate_solution, energy_telescoping,
)

__all__ = [
    'SubsystemCost', 'CostBook', 'TABLE1', 'SUBSYSTEMS', 'subsystem_lifetime_cost', 'cost_breakdown',
    'total_cost',
    'BessParams', 'SizingScenario', 'DEFAULT_COUNT_BOUNDS',
    'MilpProblem', 'MilpBuilder', 'VarKind', 'ROW_FAMILIES', 'assemble_milp', 'expected_shape',
    'count_var', 'step_var', 'describe',
    'SizingSolution', 'ValidationReport', 'FamilyCheck', 'validate_solution', 'energy_telescoping',
]
