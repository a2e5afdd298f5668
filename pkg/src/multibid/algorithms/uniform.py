"""Single-bid baseline: the largest uniform bid whose capture fits the budget."""
from __future__ import annotations

import numpy as np

from ..instance import BidAssignment, Instance, Solution, capture


def uniform_bid_solve(instance: Instance, **params) -> Solution:
    flat = np.sort(instance.prices.ravel())
    levels, first = np.unique(flat, return_index=True)
    # spend at bid b = sum of all prices <= b; cumulative sums are non-decreasing
    cum = np.cumsum(flat)
    last = np.append(first[1:], flat.size) - 1
    spend = cum[last]
    k = int(np.searchsorted(spend, instance.budget, side="right")) - 1
    if k < 0:
        bids = BidAssignment.zeros(instance.m, instance.n)
        return Solution(bids, capture(instance, bids), "uniform", dict(params), diagnostics={"bid": 0.0})
    b = float(levels[k])
    bids = BidAssignment(np.full(instance.m, b), np.ones(instance.n))
    return Solution(bids, capture(instance, bids), "uniform", dict(params),
                    diagnostics={"bid": b, "next_bid": float(levels[k + 1]) if k + 1 < levels.size else None})
