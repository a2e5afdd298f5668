"""Column-group greedy with an O(sqrt n) guarantee against the individual optimum."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..instance import BidAssignment, CaptureSet, Instance, Solution, capture, cells_to_mask
from ..oracles import individual_optimum


@dataclass(frozen=True)
class Candidate:
    columns: tuple[int, ...]
    bids: BidAssignment
    capture: CaptureSet
    from_loop: bool  # built inside the while loop rather than as a leftover singleton


def _group_cost(opt_prices: np.ndarray, cols: list[int]) -> float:
    # Row-wise max of OPT prices over the chosen columns (0 where OPT has nothing).
    return float(opt_prices[:, cols].max(axis=1).sum())


def _bids_for(opt_prices: np.ndarray, cols: tuple[int, ...], n: int) -> BidAssignment:
    c = np.zeros(n)
    c[list(cols)] = 1.0
    r = opt_prices[:, list(cols)].max(axis=1)
    return BidAssignment(r, c)


def sqrt_n_candidates(instance: Instance, opt_cells=None) -> list[Candidate]:
    """All candidate column groups, in construction order."""
    m, n = instance.shape
    if opt_cells is None:
        opt_cells = individual_optimum(instance).cells.cells
    opt_mask = cells_to_mask(opt_cells, m, n)
    opt_prices = np.where(opt_mask, instance.prices, 0.0)
    s = math.isqrt(n - 1) + 1 if n > 1 else 1  # ceil(sqrt(n))
    budget = instance.budget

    groups: list[tuple[tuple[int, ...], bool]] = []
    remaining = list(range(n))
    while len(remaining) > 2 * s:
        chosen: list[int] = []
        for j in remaining:
            if len(chosen) == s:
                break
            trial = chosen + [j]
            if _group_cost(opt_prices, trial) <= budget / len(trial):
                chosen = trial
        groups.append((tuple(chosen), True))
        taken = set(chosen)
        remaining = [j for j in remaining if j not in taken]
    groups.extend(((j,), False) for j in remaining)

    out = []
    for cols, from_loop in groups:
        bids = _bids_for(opt_prices, cols, n)
        out.append(Candidate(cols, bids, capture(instance, bids), from_loop))
    return out


def sqrt_n_solve(instance: Instance, **params) -> Solution:
    """Best candidate by captured value; earliest candidate wins ties."""
    opt = individual_optimum(instance)
    cands = sqrt_n_candidates(instance, opt.cells.cells)
    best = max(cands, key=lambda c: c.capture.value)  # max() keeps the first maximum
    return Solution(
        best.bids,
        best.capture,
        "sqrt",
        dict(params),
        diagnostics={
            "n_candidates": len(cands),
            "columns": list(best.columns),
            "opt_value": opt.value,
        },
    )
