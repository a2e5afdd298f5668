"""Checks for the structural assumptions the solvers lean on.

``fit_multiplicative`` regresses log prices on additive row and column
effects; ``monotonicity_score`` measures how well one row order explains
every column's ordering.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Optional

import numpy as np

from .consensus import consensus_permutation, partials_from_matrix, quality
from .errors import DegenerateFit
from .instance import Cell, Instance, cells_to_mask

ALS_RTOL = 1e-10
ALS_MAX_SWEEPS = 500


@dataclass(frozen=True)
class MultiplicativeFit:
    rows: np.ndarray
    cols: np.ndarray
    r_squared: float
    sweeps: int = 0  # 0 for the closed form

    def __iter__(self):
        # unpacks as (rows, cols, r_squared)
        return iter((self.rows, self.cols, self.r_squared))

    def predict(self) -> np.ndarray:
        return np.outer(self.rows, self.cols)


def _as_mask(mask, shape) -> Optional[np.ndarray]:
    if mask is None:
        return None
    if isinstance(mask, np.ndarray) and mask.dtype == bool:
        if mask.shape != shape:
            raise ValueError(f"mask shape {mask.shape} != {shape}")
        return mask
    return cells_to_mask(mask, *shape)


def _r_squared(y: np.ndarray, fitted: np.ndarray) -> float:
    ss_res = float(((y - fitted) ** 2).sum())
    ss_tot = float(((y - y.mean()) ** 2).sum())
    if ss_tot == 0.0:
        return 1.0 if ss_res <= 1e-24 * max(1, y.size) else 0.0
    return 1.0 - ss_res / ss_tot


def fit_multiplicative(
    prices: np.ndarray, mask: np.ndarray | Iterable[Cell] | None = None
) -> MultiplicativeFit:
    """Least-squares fit ``log p_ij ~ a_i + b_j`` with the gauge ``sum(a) = 0``.

    Returns ``r = exp(a)``, ``c = exp(b)`` and R^2 over the present cells.
    """
    prices = np.asarray(prices, dtype=float)
    m, n = prices.shape
    present = _as_mask(mask, prices.shape)
    if present is None:
        present = np.ones((m, n), dtype=bool)
    if not present.any(axis=1).all() or not present.any(axis=0).all():
        raise DegenerateFit("every row and column needs at least one observed price")
    if np.any(prices[present] <= 0):
        raise DegenerateFit("observed prices must be > 0")
    logp = np.zeros((m, n))
    logp[present] = np.log(prices[present])

    if present.all():
        grand = logp.mean()
        a = logp.mean(axis=1) - grand
        b = logp.mean(axis=0)
        sweeps = 0
    else:
        w = present.astype(float)
        row_cnt = w.sum(axis=1)
        col_cnt = w.sum(axis=0)
        a = np.zeros(m)
        b = (logp * w).sum(axis=0) / col_cnt
        prev = None
        sweeps = 0
        for sweeps in range(1, ALS_MAX_SWEEPS + 1):
            a = ((logp - b[None, :]) * w).sum(axis=1) / row_cnt
            b = ((logp - a[:, None]) * w).sum(axis=0) / col_cnt
            fitted = (a[:, None] + b[None, :])[present]
            if prev is not None:
                delta = np.abs(fitted - prev).max()
                if delta <= ALS_RTOL * max(1.0, np.abs(fitted).max()):
                    break
            prev = fitted
        shift = a.mean()
        a = a - shift
        b = b + shift

    fitted = (a[:, None] + b[None, :])[present]
    r2 = _r_squared(logp[present], fitted)
    return MultiplicativeFit(np.exp(a), np.exp(b), r2, sweeps)


def row_factors(instance: Instance) -> tuple[np.ndarray, np.ndarray]:
    """Exact factorization when attached, else the least-squares fit."""
    if instance.factorization is not None:
        return instance.factorization
    fit = fit_multiplicative(instance.prices)
    return fit.rows, fit.cols


def monotonicity_score(
    instance: Instance,
    axis: Literal["rows", "cols"] = "rows",
    mode: Literal["value", "ratio"] = "value",
    seed: int = 0,
    mask: np.ndarray | Iterable[Cell] | None = None,
) -> float:
    """Consensus quality of the per-line orderings; a lower bound on true monotonicity.

    ``axis="rows"`` asks whether one row order sorts every column.
    """
    if mode == "value":
        q = np.array(instance.values, dtype=float)
    elif mode == "ratio":
        q = instance.values / instance.prices
    else:
        raise ValueError(f"unknown mode {mode!r}")
    present = _as_mask(mask, instance.shape)
    if present is None:
        present = np.ones(instance.shape, dtype=bool)
    if axis == "cols":
        q, present = q.T, present.T
    elif axis != "rows":
        raise ValueError(f"unknown axis {axis!r}")
    partials = partials_from_matrix(q, present)
    order = consensus_permutation(partials, seed=seed, m=q.shape[0])
    return quality(order, partials)


def monotone_row_order(values: np.ndarray) -> Optional[list[int]]:
    """A row order making every column non-decreasing, or None if there is none."""
    values = np.asarray(values, dtype=float)
    order = sorted(range(values.shape[0]), key=lambda i: (values[i].sum(), i))
    if np.all(np.diff(values[order], axis=0) >= 0):
        return order
    return None


def is_monotone_2d(prices: np.ndarray, values: np.ndarray) -> bool:
    """Whether one row and one column rearrangement makes both matrices
    non-decreasing along rows and columns."""
    prices = np.asarray(prices, dtype=float)
    values = np.asarray(values, dtype=float)
    ro = np.lexsort((prices.sum(axis=1), values.sum(axis=1)))
    co = np.lexsort((prices.sum(axis=0), values.sum(axis=0)))
    for a in (prices[np.ix_(ro, co)], values[np.ix_(ro, co)]):
        if np.any(np.diff(a, axis=0) < 0) or np.any(np.diff(a, axis=1) < 0):
            return False
    return True
