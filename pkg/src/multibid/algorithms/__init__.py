"""Solvers. Each ``*_solve`` takes an Instance plus keyword params and returns a Solution."""
from .dp import choose_options, staircase_dp_solve, tower_dp_solve
from .sqrt_n import sqrt_n_candidates, sqrt_n_solve
from .staircase import (
    ratio_monotone_solve,
    solution_from_cells,
    staircase_bids,
    staircase_bids_geometric,
)
from .tower import (
    StripDecomposition,
    TowerProfile,
    build_strips,
    overlap,
    select_height_area,
    tower_run,
    tower_solve,
    tower_solve_area,
)
from .uniform import uniform_bid_solve

SOLVERS = {
    "ratio": ratio_monotone_solve,
    "sqrt": sqrt_n_solve,
    "tower": tower_solve,
    "tower-area": tower_solve_area,
    "staircase-dp": staircase_dp_solve,
    "tower-dp": tower_dp_solve,
    "uniform": uniform_bid_solve,
}

__all__ = [
    "SOLVERS",
    "StripDecomposition",
    "TowerProfile",
    "build_strips",
    "choose_options",
    "overlap",
    "ratio_monotone_solve",
    "select_height_area",
    "solution_from_cells",
    "sqrt_n_candidates",
    "sqrt_n_solve",
    "staircase_bids",
    "staircase_bids_geometric",
    "staircase_dp_solve",
    "tower_dp_solve",
    "tower_run",
    "tower_solve",
    "tower_solve_area",
    "uniform_bid_solve",
]
