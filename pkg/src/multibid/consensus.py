"""Majority-vote rank aggregation of partial row orderings, and its quality score."""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class PartialPermutation:
    """Rows that have data in one column, listed in increasing order of the ranked quantity."""

    column: int
    rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        if len(set(self.rows)) != len(self.rows):
            raise ValueError(f"duplicate rows in partial permutation for column {self.column}")


@dataclass(frozen=True)
class TotalOrder:
    order: tuple[int, ...]  # lowest first

    def __post_init__(self):
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError("order must be a permutation of range(m)")

    @property
    def rank(self) -> np.ndarray:
        r = np.empty(len(self.order), dtype=np.int64)
        r[list(self.order)] = np.arange(len(self.order))
        return r

    def __len__(self) -> int:
        return len(self.order)


PartialLike = PartialPermutation | Sequence[int]


def _rows_of(p: PartialLike) -> tuple[int, ...]:
    return p.rows if isinstance(p, PartialPermutation) else tuple(int(r) for r in p)


def _infer_m(partials: Iterable[PartialLike]) -> int:
    return max((max(_rows_of(p), default=-1) for p in partials), default=-1) + 1


def partials_from_matrix(matrix: np.ndarray, present: np.ndarray | None = None) -> list[PartialPermutation]:
    """One partial permutation per column, ascending by entry, ties by row index."""
    matrix = np.asarray(matrix, dtype=float)
    if present is None:
        present = np.isfinite(matrix)
    out = []
    for j in range(matrix.shape[1]):
        rows = np.flatnonzero(present[:, j])
        rows = rows[np.argsort(matrix[rows, j], kind="stable")]
        out.append(PartialPermutation(j, tuple(rows)))
    return out


def _pair_counts(partials: Sequence[PartialLike], m: int) -> tuple[np.ndarray, np.ndarray]:
    before = np.zeros((m, m), dtype=np.int64)
    together = np.zeros((m, m), dtype=np.int64)
    for p in partials:
        rows = np.asarray(_rows_of(p), dtype=np.int64)
        if rows.size < 2:
            continue
        pos = np.full(m, -1)
        pos[rows] = np.arange(rows.size)
        sub = pos[rows]
        before[np.ix_(rows, rows)] += sub[:, None] < sub[None, :]
        together[np.ix_(rows, rows)] += 1
    np.fill_diagonal(together, 0)
    return before, together


def build_dominance_digraph(partials: Sequence[PartialLike], m: int | None = None) -> np.ndarray:
    """Boolean adjacency ``adj[a, b]`` meaning edge a -> b (a ranks below b).

    For each co-occurring pair ``i < i'``: edge ``i -> i'`` when strictly more
    than half of the partials holding both put ``i`` first, else ``i' -> i``.
    """
    partials = list(partials)
    m = _infer_m(partials) if m is None else m
    before, together = _pair_counts(partials, m)
    upper = np.triu(np.ones((m, m), dtype=bool), k=1)
    co = upper & (together > 0)
    forward = co & (2 * before > together)
    adj = forward | (co & ~forward).T
    return adj


def consensus_permutation(
    partials: Sequence[PartialLike], seed: int = 0, m: int | None = None
) -> TotalOrder:
    """Aggregate partial orders into one total order.

    Vertices are visited in seeded random order; each visit adds the
    vertex's digraph parents below it and children above it, but only for
    pairs still incomparable in the transitively closed partial order built
    so far. Leftover incomparable pairs are resolved by ascending row index.
    """
    partials = list(partials)
    m = _infer_m(partials) if m is None else m
    if m <= 1:
        return TotalOrder(tuple(range(max(m, 0))))
    adj = build_dominance_digraph(partials, m)
    less = np.zeros((m, m), dtype=bool)  # less[a, b]: a < b, kept transitively closed

    def add(a: int, b: int) -> None:
        if less[a, b] or less[b, a]:
            return
        lo = less[:, a].copy()
        lo[a] = True
        hi = less[b, :].copy()
        hi[b] = True
        less[np.ix_(lo, hi)] = True

    rng = np.random.default_rng(seed)
    for s in rng.permutation(m):
        s = int(s)
        for p in np.flatnonzero(adj[:, s]):
            add(int(p), s)
        for c in np.flatnonzero(adj[s, :]):
            add(s, int(c))

    # Smallest-index-first topological sort of the closed order.
    indeg = less.sum(axis=0)
    heap = [i for i in range(m) if indeg[i] == 0]
    heapq.heapify(heap)
    order = []
    # less is transitively closed, so covering relations are not needed:
    # decrementing by all successors is equivalent.
    while heap:
        a = heapq.heappop(heap)
        order.append(a)
        for b in np.flatnonzero(less[a]):
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, int(b))
    return TotalOrder(tuple(order))


def quality(order: TotalOrder | Sequence[int], partials: Sequence[PartialLike]) -> float:
    """Fraction of within-partial pairs whose relative order ``order`` agrees with."""
    if not isinstance(order, TotalOrder):
        order = TotalOrder(tuple(order))
    rank = order.rank
    agree = 0
    total = 0
    for p in partials:
        rows = np.asarray(_rows_of(p), dtype=np.int64)
        s = rows.size
        if s < 2:
            continue
        r = rank[rows]
        agree += int(np.triu(r[:, None] < r[None, :], k=1).sum())
        total += s * (s - 1) // 2
    if total == 0:
        return 1.0
    return agree / total
