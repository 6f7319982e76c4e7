from .options import SolverOptions, OPTIMAL, INFEASIBLE, UNBOUNDED, NODE_LIMIT, TIME_LIMIT
from .simplex import LpSolution, Tableau, rows_satisfied, solve_lp
from .branch_bound import BranchNode, MilpResult, solve_milp, relative_gap, most_fractional
from .oracle import brute_force_oracle, enumeration_size, DEFAULT_BUDGET

__all__ = [
    'SolverOptions', 'OPTIMAL', 'INFEASIBLE', 'UNBOUNDED', 'NODE_LIMIT', 'TIME_LIMIT',
    'LpSolution', 'Tableau', 'rows_satisfied', 'solve_lp',
    'BranchNode', 'MilpResult', 'solve_milp', 'relative_gap', 'most_fractional',
    'brute_force_oracle', 'enumeration_size', 'DEFAULT_BUDGET',
]
