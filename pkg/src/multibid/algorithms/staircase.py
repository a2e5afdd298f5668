"""Bids that capture a staircase exactly, and the monotone-ratio solver."""
from __future__ import annotations

import math
from typing import Any, Iterable, Optional

import numpy as np

from ..errors import DegenerateFit, SynthesisFailed
from ..instance import (
    BidAssignment,
    Cell,
    Instance,
    Solution,
    Staircase,
    canonicalize_staircase,
    capture,
    capture_mask,
    cells_to_mask,
    is_staircase,
)
from ..oracles import individual_optimum, is_capturable
from ..validate import row_factors

DEFAULT_DELTA = 1e-3
_LOG_LIMIT = 700.0  # exp() stays finite and nonzero inside +/- this


def staircase_bids_geometric(
    staircase: Staircase,
    delta: float = DEFAULT_DELTA,
    factors: Optional[tuple[np.ndarray, np.ndarray]] = None,
) -> BidAssignment:
    """Geometric scheme: rows get 1/delta, 1/delta^3, ... from the top step down,
    columns get 1, delta^2, ... from the tallest step to the shortest.

    Inside the staircase every effective bid is at least ``price/delta``,
    outside at most ``price*delta`` (prices taken as ``factors`` outer
    product, unit prices when omitted). Absent rows and columns bid 0.
    """
    if not 0 < delta < 1:
        raise ValueError("delta must be in (0, 1)")
    m, n = staircase.m, staircase.n
    levels = sorted({h for h in staircase.heights if h > 0}, reverse=True)
    log_d = math.log(delta)
    log_r = np.full(m, -np.inf)
    for k, row in enumerate(staircase.row_order):
        count = sum(1 for h in levels if h > k)
        if count:
            log_r[row] = -(2 * count - 1) * log_d
    rank = {h: t for t, h in enumerate(levels)}
    log_c = np.full(n, -np.inf)
    for j, h in enumerate(staircase.heights):
        if h > 0:
            log_c[j] = 2 * rank[h] * log_d
    if factors is not None:
        log_r = log_r + np.log(factors[0])
        log_c = log_c + np.log(factors[1])
    live = np.concatenate([log_r[np.isfinite(log_r)], log_c[np.isfinite(log_c)]])
    if live.size and np.abs(live).max() > _LOG_LIMIT:
        raise SynthesisFailed(f"delta={delta:g} over/underflows with {len(levels)} steps")
    return BidAssignment(np.exp(log_r), np.exp(log_c))


def geometric_bids_for(
    instance: Instance, staircase: Staircase, delta: float = DEFAULT_DELTA
) -> BidAssignment:
    """Halve delta until the geometric bids capture exactly the staircase."""
    target = cells_to_mask(staircase.cells(), instance.m, instance.n)
    try:
        factors = row_factors(instance)
    except DegenerateFit:
        factors = None
    while True:
        bids = staircase_bids_geometric(staircase, delta, factors)  # raises once exp() breaks
        if np.array_equal(capture_mask(instance, bids), target):
            return bids
        delta /= 2.0


def staircase_bids(instance: Instance, staircase: Staircase, delta: float = DEFAULT_DELTA) -> BidAssignment:
    """Bids capturing exactly ``staircase``: difference-constraint synthesis,
    then the geometric scheme as a fallback."""
    bids = is_capturable(instance, staircase.cells())
    if bids is not None:
        return bids
    return geometric_bids_for(instance, staircase, delta)


def solution_from_cells(
    instance: Instance,
    cells: Iterable[Cell],
    tag: str,
    params: Optional[dict[str, Any]] = None,
    diagnostics: Optional[dict[str, Any]] = None,
    delta: float = DEFAULT_DELTA,
) -> Solution:
    """Wrap an intended capture set in bids.

    If no bids reproduce the set, the solution keeps the intended cells,
    sets ``mismatch`` and carries zero bids (always within budget).
    """
    cells = frozenset(cells)
    params = dict(params or {})
    diagnostics = dict(diagnostics or {})
    bids = None
    if is_staircase(cells, instance.m, instance.n):
        try:
            bids = staircase_bids(instance, canonicalize_staircase(cells, instance.m, instance.n), delta)
        except SynthesisFailed:
            bids = None
    else:
        bids = is_capturable(instance, cells)
    if bids is not None:
        cap = capture(instance, bids)
        if cap.cells == cells and cap.spend <= instance.budget:
            return Solution(bids, cap, tag, params, intended=cells, diagnostics=diagnostics)
    bids = BidAssignment.zeros(instance.m, instance.n)
    return Solution(bids, capture(instance, bids), tag, params, intended=cells, mismatch=True,
                    diagnostics=diagnostics)


def ratio_monotone_solve(instance: Instance, **params) -> Solution:
    """Capture the individual optimum outright when it is a staircase.

    Otherwise fall back to the staircase dynamic program.
    """
    opt = individual_optimum(instance)
    cells = opt.cells.cells
    if is_staircase(cells, instance.m, instance.n):
        sol = solution_from_cells(instance, cells, "ratio", params, {"opt_value": opt.value},
                                  delta=params.get("delta", DEFAULT_DELTA))
        if not sol.mismatch:
            return sol
    from .dp import staircase_dp_solve

    fallback = staircase_dp_solve(instance, **params)
    return Solution(
        fallback.bids,
        fallback.capture,
        "ratio:staircase-dp-fallback",
        fallback.params,
        intended=fallback.intended,
        mismatch=fallback.mismatch,
        diagnostics={**fallback.diagnostics, "opt_value": opt.value},
    )
