"""Row/column bid multipliers under a budget.

Each cell of an m x n grid has a price and a value; the bidder picks one
multiplier per row and per column, a cell is bought when the product of its
two multipliers reaches its price, and total spend must stay within budget.
"""
from .algorithms import (
    SOLVERS,
    build_strips,
    ratio_monotone_solve,
    select_height_area,
    sqrt_n_solve,
    staircase_bids,
    staircase_bids_geometric,
    staircase_dp_solve,
    tower_dp_solve,
    tower_solve,
    tower_solve_area,
    uniform_bid_solve,
)
from .consensus import (
    PartialPermutation,
    TotalOrder,
    build_dominance_digraph,
    consensus_permutation,
    quality,
)
from .errors import (
    ContractViolation,
    DegenerateFit,
    EmptyProfile,
    InstanceTooLarge,
    MissingFactorization,
    MultibidError,
    NotAStaircase,
    SynthesisFailed,
)
from .generators import (
    gen_antidiagonal_hard,
    gen_diagonal_hard,
    gen_independent_set_instance,
    gen_multiplicative,
)
from .instance import (
    BidAssignment,
    CaptureSet,
    Instance,
    Solution,
    Staircase,
    canonicalize_staircase,
    capture,
    is_feasible,
    is_staircase,
)
from .kernels import BACKEND
from .oracles import (
    GreedyOptResult,
    brute_force_multiplicative_optimum,
    individual_optimum,
    is_capturable,
)
from .validate import fit_multiplicative, monotonicity_score

__version__ = "0.1.0"
