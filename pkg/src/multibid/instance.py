"""Problem data and the capture/spend/value semantics shared by every solver.

Rows and columns are 0-based throughout. A cell ``(i, j)`` is captured by bids
``(r, c)`` when ``r[i] * c[j] >= prices[i, j]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional

import numpy as np

from .errors import ContractViolation, NotAStaircase

Cell = tuple[int, int]

FACTORIZATION_RTOL = 1e-9


def _frozen(a, dtype=np.float64) -> np.ndarray:
    arr = np.array(a, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Instance:
    prices: np.ndarray
    values: np.ndarray
    budget: float
    factorization: Optional[tuple[np.ndarray, np.ndarray]] = None

    def __post_init__(self):
        prices = _frozen(self.prices)
        values = _frozen(self.values)
        if prices.ndim != 2 or prices.shape[0] < 1 or prices.shape[1] < 1:
            raise ContractViolation(f"prices must be a non-empty matrix, got shape {prices.shape}")
        if values.shape != prices.shape:
            raise ContractViolation(f"values shape {values.shape} != prices shape {prices.shape}")
        if not np.all(np.isfinite(prices)) or not np.all(prices > 0):
            raise ContractViolation("all prices must be finite and > 0")
        if not np.all(np.isfinite(values)) or not np.all(values >= 0):
            raise ContractViolation("all values must be finite and >= 0")
        budget = float(self.budget)
        if not (budget > 0 and np.isfinite(budget)):
            raise ContractViolation(f"budget must be finite and > 0, got {self.budget!r}")
        object.__setattr__(self, "prices", prices)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "budget", budget)
        if self.factorization is not None:
            rows, cols = (_frozen(v) for v in self.factorization)
            if rows.shape != (prices.shape[0],) or cols.shape != (prices.shape[1],):
                raise ContractViolation("factorization vectors do not match the grid")
            if not np.allclose(np.outer(rows, cols), prices, rtol=FACTORIZATION_RTOL, atol=0.0):
                raise ContractViolation("prices are not the outer product of the factorization")
            object.__setattr__(self, "factorization", (rows, cols))

    @property
    def m(self) -> int:
        return self.prices.shape[0]

    @property
    def n(self) -> int:
        return self.prices.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.prices.shape

    def max_cost_fraction(self) -> float:
        """Largest ``p_ij / B``; the small-cost assumption asks for this to be tiny."""
        return float(self.prices.max() / self.budget)

    def with_budget(self, budget: float) -> "Instance":
        return Instance(self.prices, self.values, budget, self.factorization)

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "m": self.m,
            "n": self.n,
            "prices": self.prices.tolist(),
            "values": self.values.tolist(),
            "budget": self.budget,
        }
        if self.factorization is not None:
            d["factorization"] = {
                "rows": self.factorization[0].tolist(),
                "cols": self.factorization[1].tolist(),
            }
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Instance":
        prices = np.asarray(d["prices"], dtype=float)
        if prices.shape != (d["m"], d["n"]):
            raise ContractViolation(f"declared {d['m']}x{d['n']} but prices are {prices.shape}")
        fac = d.get("factorization")
        factorization = None if fac is None else (fac["rows"], fac["cols"])
        return cls(prices, d["values"], d["budget"], factorization)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Instance":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True, eq=False)
class BidAssignment:
    rows: np.ndarray
    cols: np.ndarray

    def __post_init__(self):
        rows = _frozen(self.rows)
        cols = _frozen(self.cols)
        if rows.ndim != 1 or cols.ndim != 1:
            raise ContractViolation("bid multipliers must be vectors")
        for name, v in (("row", rows), ("column", cols)):
            if not np.all(np.isfinite(v)) or np.any(v < 0):
                raise ContractViolation(f"{name} multipliers must be finite and >= 0")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    @classmethod
    def zeros(cls, m: int, n: int) -> "BidAssignment":
        return cls(np.zeros(m), np.zeros(n))

    def effective(self) -> np.ndarray:
        return np.outer(self.rows, self.cols)

    def to_dict(self) -> dict[str, list[float]]:
        return {"rows": self.rows.tolist(), "cols": self.cols.tolist()}


@dataclass(frozen=True)
class CaptureSet:
    cells: frozenset[Cell]
    spend: float
    value: float

    def sorted_cells(self) -> list[Cell]:
        return sorted(self.cells)

    def __len__(self) -> int:
        return len(self.cells)


def cells_to_mask(cells: Iterable[Cell], m: int, n: int) -> np.ndarray:
    mask = np.zeros((m, n), dtype=bool)
    for i, j in cells:
        if not (0 <= i < m and 0 <= j < n):
            raise ContractViolation(f"cell {(i, j)} outside the {m}x{n} grid")
        mask[i, j] = True
    return mask


def mask_to_cells(mask: np.ndarray) -> frozenset[Cell]:
    return frozenset((int(i), int(j)) for i, j in zip(*np.nonzero(mask)))


def capture_of_cells(instance: Instance, cells: Iterable[Cell]) -> CaptureSet:
    """Spend/value accounting for an explicit cell set (no bids involved)."""
    cells = frozenset((int(i), int(j)) for i, j in cells)
    mask = cells_to_mask(cells, instance.m, instance.n)
    return CaptureSet(cells, float(instance.prices[mask].sum()), float(instance.values[mask].sum()))


def capture_mask(instance: Instance, bids: BidAssignment) -> np.ndarray:
    if bids.rows.shape != (instance.m,) or bids.cols.shape != (instance.n,):
        raise ContractViolation(
            f"bids are {bids.rows.shape[0]}x{bids.cols.shape[0]}, instance is {instance.m}x{instance.n}"
        )
    return np.outer(bids.rows, bids.cols) >= instance.prices


def capture(instance: Instance, bids: BidAssignment) -> CaptureSet:
    """Cells whose effective bid is at least the price, with spend and value totals."""
    mask = capture_mask(instance, bids)
    return CaptureSet(
        mask_to_cells(mask),
        float(instance.prices[mask].sum()),
        float(instance.values[mask].sum()),
    )


def is_feasible(instance: Instance, bids: BidAssignment) -> bool:
    mask = capture_mask(instance, bids)
    return bool(instance.prices[mask].sum() <= instance.budget)


def is_staircase(cells: Iterable[Cell], m: int, n: int) -> bool:
    """True when the per-column row sets are pairwise nested."""
    mask = cells_to_mask(cells, m, n)
    # Nested sets form a chain; sorting columns by size makes the chain consecutive.
    sizes = mask.sum(axis=0)
    order = np.argsort(-sizes, kind="stable")
    for a, b in zip(order[:-1], order[1:]):
        if np.any(mask[:, b] & ~mask[:, a]):
            return False
    return True


@dataclass(frozen=True)
class Staircase:
    """Nested column sets as a bottom-up row order plus a height per column.

    Column ``j`` holds the rows ``row_order[:heights[j]]``.
    """

    row_order: tuple[int, ...]
    heights: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.row_order)

    @property
    def n(self) -> int:
        return len(self.heights)

    @property
    def column_order(self) -> tuple[int, ...]:
        """Columns by decreasing height, ties by column index."""
        return tuple(sorted(range(self.n), key=lambda j: (-self.heights[j], j)))

    def cells(self) -> frozenset[Cell]:
        return frozenset(
            (self.row_order[k], j) for j, h in enumerate(self.heights) for k in range(h)
        )


def canonicalize_staircase(cells: Iterable[Cell], m: int, n: int) -> Staircase:
    cells = frozenset(cells)
    if not is_staircase(cells, m, n):
        raise NotAStaircase("column row-sets are not nested")
    mask = cells_to_mask(cells, m, n)
    # A row's membership count is how many columns reach it; deeper rows are in more columns.
    counts = mask.sum(axis=1)
    row_order = tuple(int(i) for i in sorted(range(m), key=lambda i: (-counts[i], i)))
    heights = tuple(int(h) for h in mask.sum(axis=0))
    return Staircase(row_order, heights)


@dataclass(frozen=True, eq=False)
class Solution:
    bids: BidAssignment
    capture: CaptureSet
    algorithm_tag: str
    params: dict[str, Any] = field(default_factory=dict)
    intended: Optional[frozenset[Cell]] = None
    mismatch: bool = False
    diagnostics: dict[str, Any] = field(default_factory=dict)

    @property
    def value(self) -> float:
        return self.capture.value

    @property
    def spend(self) -> float:
        return self.capture.spend

    def check(self, instance: Instance) -> None:
        """Raise ContractViolation if the stored capture is stale or over budget."""
        actual = capture(instance, self.bids)
        if actual.cells != self.capture.cells:
            raise ContractViolation("solution capture does not match its bids")
        if actual.spend > instance.budget:
            raise ContractViolation(f"spend {actual.spend} exceeds budget {instance.budget}")


def make_solution(instance: Instance, bids: BidAssignment, tag: str, params=None, **kw) -> Solution:
    return Solution(bids, capture(instance, bids), tag, dict(params or {}), **kw)
