"""Ground-truth references.

``individual_optimum`` is the per-cell bidding benchmark (ratio greedy with a
prefix stop). ``is_capturable`` decides whether some multipliers capture an
exact cell set, and ``brute_force_multiplicative_optimum`` enumerates every
cell set of a tiny instance.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import kernels
from .errors import InstanceTooLarge
from .instance import (
    BidAssignment,
    CaptureSet,
    Cell,
    Instance,
    capture,
    capture_of_cells,
    cells_to_mask,
)

DEFAULT_ORACLE_CAP = 16


@dataclass(frozen=True)
class GreedyOptResult:
    cells: CaptureSet
    ratio_cutoff: Optional[float]  # v/p of the last accepted cell, None if nothing was taken
    exhausted: bool  # True when the budget, not the supply of valued cells, stopped the scan
    order: tuple[Cell, ...] = ()  # accepted cells in acceptance order

    @property
    def value(self) -> float:
        return self.cells.value

    @property
    def spend(self) -> float:
        return self.cells.spend


def ratio_order(instance: Instance) -> list[Cell]:
    """Valued cells by non-increasing v/p, then higher v, then row-major index."""
    p, v = instance.prices, instance.values
    ii, jj = np.nonzero(v > 0)
    ratio = v[ii, jj] / p[ii, jj]
    idx = ii * instance.n + jj
    order = np.lexsort((idx, -v[ii, jj], -ratio))
    return [(int(ii[k]), int(jj[k])) for k in order]


def individual_optimum(instance: Instance, budget: Optional[float] = None) -> GreedyOptResult:
    """Greedy by v/p; stops at the first cell that no longer fits."""
    budget = instance.budget if budget is None else float(budget)
    if not budget > 0:
        raise ValueError("budget must be > 0")
    p, v = instance.prices, instance.values
    taken: list[Cell] = []
    spend = 0.0
    exhausted = False
    for i, j in ratio_order(instance):
        if spend + p[i, j] > budget:
            exhausted = True
            break
        spend += p[i, j]
        taken.append((i, j))
    cutoff = None
    if taken:
        i, j = taken[-1]
        cutoff = float(v[i, j] / p[i, j])
    return GreedyOptResult(capture_of_cells(instance, taken), cutoff, exhausted, tuple(taken))


def fractional_bound(instance: Instance, budget: Optional[float] = None) -> float:
    """LP-relaxation value of the per-cell knapsack; an upper bound on any capture."""
    budget = instance.budget if budget is None else float(budget)
    p, v = instance.prices, instance.values
    total = 0.0
    left = budget
    for i, j in ratio_order(instance):
        if p[i, j] <= left:
            total += v[i, j]
            left -= p[i, j]
        else:
            total += v[i, j] * left / p[i, j]
            break
    return total


def _gap(log_p: np.ndarray) -> float:
    span = float(log_p.max() - log_p.min()) if log_p.size else 0.0
    return max(1e-6 * span, 1e-9)


def _solve_log_bids(instance: Instance, mask: np.ndarray) -> Optional[BidAssignment]:
    m, n = instance.shape
    rows = np.flatnonzero(mask.any(axis=1))
    cols = np.flatnonzero(mask.any(axis=0))
    r = np.zeros(m)
    c = np.zeros(n)
    if rows.size == 0:
        return BidAssignment(r, c)
    log_p = np.log(instance.prices)
    gap = _gap(log_p)
    sub_mask = mask[np.ix_(rows, cols)]
    sub_log = log_p[np.ix_(rows, cols)]
    nr = rows.size
    # Nodes 0..nr-1 are x_i = log r_i; nodes nr.. are z_j = -log c_j.
    # In-cell  x_i + y_j >= L  <=>  z_j - x_i <= -L     : edge x_i -> z_j, weight -L
    # Out-cell x_i + y_j <= L - gap <=> x_i - z_j <= L - gap : edge z_j -> x_i, weight L - gap
    ri, cj = np.nonzero(sub_mask)
    oi, oj = np.nonzero(~sub_mask)
    src = np.concatenate([ri, nr + oj])
    dst = np.concatenate([nr + cj, oi])
    w = np.concatenate([-sub_log[ri, cj], sub_log[oi, oj] - gap])
    ok, dist = kernels.bellman_ford(nr + cols.size, src, dst, w)
    if not ok:
        return None
    x = dist[:nr]
    y = -dist[nr:]
    # Balance magnitudes between rows and columns, then split the gap so both
    # in- and out-constraints keep a margin of gap/2 against rounding.
    shift = (x.mean() - y.mean()) / 2.0
    x = x - shift + gap / 2.0
    y = y + shift
    with np.errstate(over="ignore", under="ignore"):
        r[rows] = np.exp(x)
        c[cols] = np.exp(y)
    if not (np.all(np.isfinite(r)) and np.all(np.isfinite(c))):
        return None
    if np.any(r[rows] == 0) or np.any(c[cols] == 0):
        return None
    return BidAssignment(r, c)


def is_capturable(instance: Instance, cells: Iterable[Cell]) -> Optional[BidAssignment]:
    """Bids capturing exactly ``cells``, or None when no such bids exist."""
    mask = cells_to_mask(cells, instance.m, instance.n)
    bids = _solve_log_bids(instance, mask)
    if bids is None:
        return None
    got = np.outer(bids.rows, bids.cols) >= instance.prices
    if not np.array_equal(got, mask):
        return None
    return bids


def brute_force_multiplicative_optimum(
    instance: Instance, limit: int = DEFAULT_ORACLE_CAP
) -> tuple[CaptureSet, BidAssignment]:
    """Best capturable, budget-feasible cell set by exhaustive enumeration.

    Ties in value go to the lexicographically smallest sorted cell list.
    """
    m, n = instance.shape
    k = m * n
    if k > limit:
        raise InstanceTooLarge(f"{m}x{n} = {k} cells exceeds the oracle cap of {limit}")
    p = instance.prices.ravel()
    v = instance.values.ravel()
    subsets = np.arange(1 << k, dtype=np.int64)
    bits = ((subsets[:, None] >> np.arange(k)) & 1).astype(bool)
    spend = bits @ p
    value = bits @ v
    ok = spend <= instance.budget
    cand = subsets[ok]
    cand_value = value[ok]
    order = np.argsort(-cand_value, kind="stable")
    scale = max(1.0, float(v.sum()))
    tol = 1e-12 * scale

    def cells_of(s: int) -> tuple[Cell, ...]:
        return tuple(divmod(b, n) for b in range(k) if s >> b & 1)

    top = None
    for idx in order:
        if is_capturable(instance, cells_of(int(cand[idx]))) is not None:
            top = float(cand_value[idx])
            break
    assert top is not None  # the empty set is always feasible and capturable
    tied = sorted(cells_of(int(s)) for s in cand[np.abs(cand_value - top) <= tol])
    for cells in tied:
        bids = is_capturable(instance, cells)
        if bids is not None:
            return capture(instance, bids), bids
    raise AssertionError("unreachable: the top capturable set is among the ties")
