"""Equilibria of two-battlefield continuous Blotto games with polynomial outcome functions."""

from .game import GameSpec, ReducedMatrix, ShiftedKernel, expected_payoff_reduced, payoff, reduced_matrix, shift_payoff
from .lp import LPError, MatrixGameSolution, solve_matrix_game
from .poly import (
    Interval,
    OrthoBasis,
    Polynomial,
    eval_poly,
    gram_schmidt_basis,
    inner_product,
    monomial_inner_product,
)
from .solver import (
    BudgetExceeded,
    DiscreteGameMatrix,
    EquilibriumReport,
    best_response_gap,
    build_grid_game,
    mc_check,
    solve,
    solve_lp_pipeline,
    solve_symmetric_grid,
)
from .strategy import (
    DiscreteStrategy,
    caratheodory_reduce,
    embed_pure,
    embed_strategy,
    exact_payoff,
    reduce_support,
    symmetrize,
)

__all__ = [
    "BudgetExceeded",
    "DiscreteGameMatrix",
    "DiscreteStrategy",
    "EquilibriumReport",
    "GameSpec",
    "Interval",
    "LPError",
    "MatrixGameSolution",
    "OrthoBasis",
    "Polynomial",
    "ReducedMatrix",
    "ShiftedKernel",
    "best_response_gap",
    "build_grid_game",
    "caratheodory_reduce",
    "embed_pure",
    "embed_strategy",
    "eval_poly",
    "exact_payoff",
    "expected_payoff_reduced",
    "gram_schmidt_basis",
    "inner_product",
    "mc_check",
    "monomial_inner_product",
    "payoff",
    "reduce_support",
    "reduced_matrix",
    "shift_payoff",
    "solve",
    "solve_lp_pipeline",
    "solve_matrix_game",
    "solve_symmetric_grid",
    "symmetrize",
]
