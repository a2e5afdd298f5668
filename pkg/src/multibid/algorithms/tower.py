"""Tower building for multiplicative prices and row-monotone values.

Rows are clustered into strips by their price factor rounded down to a power
of two (cheapest strip on top), sorted by value inside each strip, and the
individual optimum at a quarter of the budget is read as width-1 towers
standing on strip bottoms. ``ALG_h`` keeps every tower's bottom ``h`` cells
and copies each column's blocks into all cheaper strips tall enough to hold
them, which makes it a staircase.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..consensus import consensus_permutation, partials_from_matrix
from ..errors import DegenerateFit, EmptyProfile, MissingFactorization
from ..instance import Cell, Instance, Solution, capture_of_cells
from ..oracles import GreedyOptResult, individual_optimum
from ..validate import monotone_row_order, row_factors
from .staircase import DEFAULT_DELTA, solution_from_cells


@dataclass(frozen=True)
class Strip:
    level: int  # rounded row price is 2**level
    rows: tuple[int, ...]  # top to bottom, increasing value

    @property
    def height(self) -> int:
        return len(self.rows)

    def bottom(self, h: int) -> tuple[int, ...]:
        return self.rows[len(self.rows) - min(h, len(self.rows)):]


@dataclass(frozen=True, eq=False)
class StripDecomposition:
    strips: tuple[Strip, ...]  # ascending level, cheapest first
    row_price_used: np.ndarray
    col_price_used: np.ndarray

    @property
    def row_order(self) -> list[int]:
        """Rows top to bottom across all strips."""
        return [r for s in self.strips for r in s.rows]

    def strip_of(self) -> dict[int, int]:
        return {r: k for k, s in enumerate(self.strips) for r in s.rows}

    def rounded_prices(self) -> np.ndarray:
        levels = np.empty(len(self.row_price_used))
        for s in self.strips:
            levels[list(s.rows)] = s.level
        return np.outer(np.exp2(levels), self.col_price_used)


def floor_log2(x: float) -> int:
    """Exact floor(log2(x)) for x > 0."""
    mant, exp = math.frexp(x)  # x = mant * 2**exp, mant in [0.5, 1)
    return exp - 1


def _strip_value_order(values: np.ndarray, rows: list[int], seed: int) -> list[int]:
    sub = values[rows]
    exact = monotone_row_order(sub)
    if exact is not None:
        return [rows[k] for k in exact]
    order = consensus_permutation(partials_from_matrix(sub), seed=seed, m=len(rows))
    return [rows[k] for k in order.order]


def build_strips(instance: Instance, seed: int = 0) -> StripDecomposition:
    try:
        p_rows, q_cols = row_factors(instance)
    except DegenerateFit as exc:
        raise MissingFactorization(str(exc)) from exc
    levels = [floor_log2(float(p)) for p in p_rows]
    strips = []
    for level in sorted(set(levels)):
        members = [i for i, lv in enumerate(levels) if lv == level]
        strips.append(Strip(level, tuple(_strip_value_order(instance.values, members, seed))))
    return StripDecomposition(tuple(strips), np.asarray(p_rows), np.asarray(q_cols))


@dataclass(frozen=True, eq=False)
class TowerRun:
    """Everything the ALG_h family is built from, plus the family itself."""

    decomposition: StripDecomposition
    opt_quarter: GreedyOptResult  # on rounded prices, cells in original indices
    tower_heights: np.ndarray  # [strip, column]
    alg: dict[int, frozenset[Cell]] = field(default_factory=dict)

    def alg_cells(self, h: int) -> frozenset[Cell]:
        return alg_h_cells(self.decomposition, self.tower_heights, h)


def alg_h_cells(dec: StripDecomposition, heights: np.ndarray, h: int) -> frozenset[Cell]:
    n_strips, n = heights.shape
    cells = set()
    for j in range(n):
        chosen = [s for s in range(n_strips) if heights[s, j] >= h]
        if not chosen:
            continue
        deepest = max(chosen)
        for s in range(deepest + 1):
            strip = dec.strips[s]
            if strip.height >= h:
                cells.update((r, j) for r in strip.bottom(h))
    return frozenset(cells)


def _quarter_optimum(instance: Instance, dec: StripDecomposition) -> GreedyOptResult:
    order = dec.row_order
    rounded = dec.rounded_prices()
    reordered = Instance(rounded[order], instance.values[order], instance.budget)
    res = individual_optimum(reordered, instance.budget / 4.0)
    back = [(order[i], j) for i, j in res.order]
    return GreedyOptResult(capture_of_cells(instance, back), res.ratio_cutoff, res.exhausted, tuple(back))


def tower_run(instance: Instance, seed: int = 0) -> TowerRun:
    dec = build_strips(instance, seed)
    opt = _quarter_optimum(instance, dec)
    strip_of = dec.strip_of()
    heights = np.zeros((len(dec.strips), instance.n), dtype=np.int64)
    for i, j in opt.order:
        heights[strip_of[i], j] += 1
    run = TowerRun(dec, opt, heights)
    top = int(heights.max()) if heights.size else 0
    for h in range(1, top + 1):
        run.alg[h] = alg_h_cells(dec, heights, h)
    return run


def tower_solve(instance: Instance, **params) -> Solution:
    """Best ``ALG_h`` whose spend at true prices fits the budget; smallest h on ties."""
    run = tower_run(instance, params.get("seed", 0))
    best_h, best_val = None, -1.0
    per_h = []
    for h, cells in sorted(run.alg.items()):
        cap = capture_of_cells(instance, cells)
        ok = cap.spend <= instance.budget
        per_h.append({"h": h, "spend": cap.spend, "value": cap.value, "feasible": ok})
        if ok and cap.value > best_val:
            best_h, best_val = h, cap.value
    cells = run.alg[best_h] if best_h is not None else frozenset()
    diag = {"h": best_h, "opt_quarter_value": run.opt_quarter.value, "per_h": per_h}
    return solution_from_cells(instance, cells, "tower", params, diag,
                               delta=params.get("delta", DEFAULT_DELTA))


@dataclass(frozen=True)
class Tower:
    strip: int
    column: int
    height: int
    prices: tuple[float, ...]  # bottom-up
    values: tuple[float, ...]  # bottom-up


@dataclass(frozen=True, eq=False)
class TowerProfile:
    """Towers juxtaposed by decreasing height; ``step[k-1]`` is f on (k-1, k]."""

    m: int
    step: np.ndarray
    towers: tuple[Tower, ...] = ()

    @property
    def area(self) -> float:
        return float(self.step.sum())

    @classmethod
    def from_towers(cls, towers, m: int) -> "TowerProfile":
        towers = tuple(sorted(towers, key=lambda t: (-t.height, t.strip, t.column)))
        step = np.zeros(m)
        for t in towers:
            step[: t.height] += np.asarray(t.prices[: t.height])
        return cls(m, step, towers)

    @classmethod
    def from_step(cls, step) -> "TowerProfile":
        step = np.asarray(step, dtype=float)
        if np.any(np.diff(step) > 0) or np.any(step < 0):
            raise ValueError("step function must be non-negative and non-increasing")
        return cls(len(step), step)

    @classmethod
    def from_run(cls, instance: Instance, run: TowerRun) -> "TowerProfile":
        rounded = run.decomposition.rounded_prices()
        towers = []
        for s, strip in enumerate(run.decomposition.strips):
            for j in range(instance.n):
                t = int(run.tower_heights[s, j])
                if t == 0:
                    continue
                rows = strip.bottom(t)[::-1]
                towers.append(Tower(s, j, t, tuple(rounded[r, j] for r in rows),
                                    tuple(instance.values[r, j] for r in rows)))
        return cls.from_towers(towers, instance.m)


def overlap(profile: TowerProfile, h: int) -> float:
    """Area shared by the rectangle [0, h] x [0, A/h] and the region under f."""
    cap = profile.area / h
    return float(np.minimum(profile.step[:h], cap).sum())


def height_sequence(profile: TowerProfile) -> list[int]:
    """t_1 = m, t_{i+1} = largest t with f(t) >= A / t_i, while t keeps shrinking."""
    f, a = profile.step, profile.area
    ts = [profile.m]
    while True:
        y = a / ts[-1]
        if y > f[0]:
            break
        nxt = int(np.count_nonzero(f >= y))  # f is non-increasing
        if nxt >= ts[-1]:
            break
        ts.append(nxt)
    return ts


def select_height_area(profile: TowerProfile) -> int:
    if profile.m == 0 or profile.area <= 0:
        raise EmptyProfile("profile has no area")
    ts = height_sequence(profile)
    return max(sorted(set(ts)), key=lambda h: overlap(profile, h))  # first max = smallest h


def tower_solve_area(instance: Instance, **params) -> Solution:
    """Single height from the area rule; blocks taken in profile order up to A, then propagated."""
    run = tower_run(instance, params.get("seed", 0))
    delta = params.get("delta", DEFAULT_DELTA)
    profile = TowerProfile.from_run(instance, run)
    try:
        h = select_height_area(profile)
    except EmptyProfile:
        return solution_from_cells(instance, frozenset(), "tower-area", params, {"h": None}, delta=delta)
    dec = run.decomposition
    rounded = dec.rounded_prices()
    taken = []
    spent = 0.0
    for t in profile.towers:
        strip = dec.strips[t.strip]
        block = strip.bottom(h)
        cost = float(sum(rounded[r, t.column] for r in block))
        if spent + cost > profile.area:
            break
        spent += cost
        taken.append(t)

    def propagate(towers) -> frozenset[Cell]:
        deepest: dict[int, int] = {}
        for t in towers:
            deepest[t.column] = max(deepest.get(t.column, -1), t.strip)
        cells = set()
        for j, sd in deepest.items():
            for s in range(sd + 1):
                cells.update((r, j) for r in dec.strips[s].bottom(h))
        return frozenset(cells)

    cells = propagate(taken)
    while taken and capture_of_cells(instance, cells).spend > instance.budget:
        taken.pop()
        cells = propagate(taken)
    diag = {"h": h, "area": profile.area, "towers_taken": len(taken),
            "opt_quarter_value": run.opt_quarter.value}
    return solution_from_cells(instance, cells, "tower-area", params, diag, delta=delta)
