"""Column-by-column dynamic programs over nested per-column choices.

Each column picks one option from a list of nested cell blocks (bottom
prefixes of a shared row sequence), so any combination is a staircase. The
budget is discretized into ``budget_buckets`` units with costs rounded up,
which keeps every reported solution within budget; ``budget_buckets=None``
runs an exact Pareto-front DP instead.
"""
from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

from .. import kernels
from ..consensus import consensus_permutation, partials_from_matrix
from ..instance import Cell, Instance, Solution
from .staircase import DEFAULT_DELTA, solution_from_cells
from .tower import build_strips

DEFAULT_BUCKETS = 200


def _bucket_costs(costs: np.ndarray, budget: float, buckets: int) -> np.ndarray:
    over = ~(costs <= budget)
    units = np.ceil(np.where(over, 0.0, costs) * buckets / budget).astype(np.int64)
    units[over] = -1
    return units


def choose_options(
    costs: np.ndarray, values: np.ndarray, budget: float, buckets: Optional[int] = DEFAULT_BUCKETS
) -> tuple[list[int], float]:
    """Pick one option per column maximizing value with total cost <= budget.

    ``costs``/``values`` are ``(n_columns, n_options)``; NaN cost marks a
    missing option. Option 0 must cost 0 so that the empty choice always exists.
    """
    costs = np.asarray(costs, dtype=float)
    values = np.asarray(values, dtype=float)
    missing = np.isnan(costs)
    if buckets is None:
        return _pareto(np.where(missing, np.inf, costs), values, budget)
    units = _bucket_costs(np.where(missing, np.inf, costs), budget, buckets)
    vals = np.where(units < 0, 0.0, values)
    best, choice = kernels.mck_dp(units, vals, buckets)
    n = costs.shape[0]
    # best[] is non-decreasing in capacity; walk down if a float-rounding
    # corner makes the traced choice overspend at true prices.
    for cap in range(buckets, -1, -1):
        picks = [0] * n
        x = cap
        for g in range(n - 1, -1, -1):
            k = int(choice[g, x])
            picks[g] = k
            x -= int(units[g, k])
        spend = float(sum(costs[g, k] for g, k in enumerate(picks)))
        if spend <= budget:
            return picks, float(sum(values[g, k] for g, k in enumerate(picks)))
    return [0] * n, 0.0


def _pareto(costs: np.ndarray, values: np.ndarray, budget: float) -> tuple[list[int], float]:
    # Each front entry: (spend, value, parent index in previous front, option).
    fronts: list[list[tuple[float, float, int, int]]] = []
    prev: list[tuple[float, float, int, int]] = [(0.0, 0.0, -1, -1)]
    for g in range(costs.shape[0]):
        cand = []
        for pi, (ps, pv, _, _) in enumerate(prev):
            for k in range(costs.shape[1]):
                s = ps + costs[g, k]
                if s <= budget:
                    cand.append((s, pv + values[g, k], pi, k))
        cand.sort(key=lambda t: (t[0], -t[1]))
        front = []
        top = -math.inf
        for t in cand:
            if t[1] > top:
                front.append(t)
                top = t[1]
        fronts.append(front)
        prev = front
    # highest value; on ties the cheapest, which sorts first
    best_i = max(range(len(prev)), key=lambda i: (prev[i][1], -i))
    picks = [0] * costs.shape[0]
    i = best_i
    for g in range(costs.shape[0] - 1, -1, -1):
        _, _, parent, k = fronts[g][i]
        picks[g] = k
        i = parent
    return picks, float(prev[best_i][1])


def _prefix_tables(instance: Instance, blocks: Sequence[Sequence[int]]):
    """Cumulative cost/value of taking blocks[0..k-1] in every column."""
    n = instance.n
    k = len(blocks)
    costs = np.zeros((n, k + 1))
    values = np.zeros((n, k + 1))
    for b, rows in enumerate(blocks, start=1):
        rows = list(rows)
        costs[:, b] = costs[:, b - 1] + instance.prices[rows].sum(axis=0)
        values[:, b] = values[:, b - 1] + instance.values[rows].sum(axis=0)
    return costs, values


def _cells(blocks: Sequence[Sequence[int]], picks: list[int]) -> frozenset[Cell]:
    return frozenset((r, j) for j, k in enumerate(picks) for b in blocks[:k] for r in b)


def staircase_row_order(instance: Instance, seed: int = 0) -> list[int]:
    """Consensus of the per-column v/p orderings, highest ratio first."""
    ratio = instance.values / instance.prices
    order = consensus_permutation(partials_from_matrix(ratio), seed=seed, m=instance.m)
    return list(reversed(order.order))


def staircase_dp_solve(instance: Instance, **params) -> Solution:
    """Best staircase whose columns are bottom prefixes of one consensus row order."""
    buckets = params.get("budget_buckets", DEFAULT_BUCKETS)
    seed = params.get("seed", 0)
    bottom_up = staircase_row_order(instance, seed)
    blocks = [[r] for r in bottom_up]
    costs, values = _prefix_tables(instance, blocks)
    picks, _ = choose_options(costs, values, instance.budget, buckets)
    diag = {"row_order_bottom_up": bottom_up, "heights": picks}
    return solution_from_cells(instance, _cells(blocks, picks), "staircase-dp", params, diag,
                               delta=params.get("delta", DEFAULT_DELTA))


def tower_dp_solve(instance: Instance, **params) -> Solution:
    """For each height h, columns choose how many cheapest strips get a bottom-h block."""
    buckets = params.get("budget_buckets", DEFAULT_BUCKETS)
    dec = build_strips(instance, params.get("seed", 0))
    best = (-1.0, None, frozenset())
    max_h = max(s.height for s in dec.strips)
    for h in range(1, max_h + 1):
        blocks = [s.bottom(h) for s in dec.strips if s.height >= h]
        costs, values = _prefix_tables(instance, blocks)
        picks, val = choose_options(costs, values, instance.budget, buckets)
        if val > best[0]:
            best = (val, h, _cells(blocks, picks))
    _, h, cells = best
    return solution_from_cells(instance, cells, "tower-dp", params, {"h": h},
                               delta=params.get("delta", DEFAULT_DELTA))
