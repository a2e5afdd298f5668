"""Instance builders: the adversarial families and seeded synthetic data."""
from __future__ import annotations

from typing import Iterable, Literal, Mapping, Optional, Sequence

import numpy as np

from .instance import Instance

EPS_PRICE = 1e-12


def gen_diagonal_hard(n: int) -> Instance:
    """Unit prices, unit value on the diagonal only, budget n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Instance(np.ones((n, n)), np.eye(n), float(n), (np.ones(n), np.ones(n)))


def gen_antidiagonal_hard(n: int, c: int = 2) -> Instance:
    """Cheap worthless cells above the antidiagonal, unit cells on it, pricey valued cells below.

    ``c = 2`` gives prices n^(-1/3) above and n^(1/3) below.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if c < 2 or int(c) != c:
        raise ValueError("c must be an integer >= 2")
    above = float(n) ** (1.0 / (1 - 2 * c))
    below = float(n) ** ((c - 1) / (2 * c - 1))
    s = np.add.outer(np.arange(n), np.arange(n))  # 0-based: antidiagonal is i + j == n - 1
    prices = np.where(s < n - 1, above, np.where(s == n - 1, 1.0, below))
    values = np.where(s < n - 1, 0.0, 1.0)
    return Instance(prices, values, float(n))


def _adjacency(graph: Mapping[int, Iterable[int]] | Sequence[Iterable[int]], n: Optional[int]) -> np.ndarray:
    items = graph.items() if isinstance(graph, Mapping) else enumerate(graph)
    edges = [(int(u), int(v)) for u, nbrs in items for v in nbrs]
    if n is None:
        n = len(graph) if not isinstance(graph, Mapping) else 0
        n = max([n] + [max(u, v) + 1 for u, v in edges])
    adj = np.zeros((n, n), dtype=bool)
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop at {u}; the graph must be simple")
        adj[u, v] = adj[v, u] = True
    return adj


def gen_independent_set_instance(
    graph: Mapping[int, Iterable[int]] | Sequence[Iterable[int]],
    budget: Optional[float] = None,
    independent_set: Optional[Iterable[int]] = None,
    n: Optional[int] = None,
) -> Instance:
    """Identity values over identity-plus-adjacency prices.

    Non-edges would cost 0; they get ``EPS_PRICE`` instead and the budget is
    raised by the total epsilon mass so they stay free in effect.
    """
    adj = _adjacency(graph, n)
    n = adj.shape[0]
    if n < 1:
        raise ValueError("graph has no vertices")
    prices = np.where(adj, 1.0, EPS_PRICE)
    np.fill_diagonal(prices, 1.0)
    values = np.eye(n)
    if budget is None:
        budget = float(len(set(independent_set))) if independent_set is not None else float(n)
    off = ~adj
    np.fill_diagonal(off, False)
    budget = float(budget) + EPS_PRICE * float(off.sum())
    return Instance(prices, values, budget)


ValueMode = Literal["monotone", "ratio-monotone", "random"]


def gen_multiplicative(
    m: int,
    n: int,
    seed: int = 0,
    price_noise: float = 0.0,
    value_mode: ValueMode = "monotone",
    value_noise: float = 0.0,
    budget_fraction: float = 0.25,
) -> Instance:
    """Log-uniform row/column price factors with optional log-normal noise.

    value modes: ``monotone`` (one hidden row order sorts every column),
    ``ratio-monotone`` (v/p depends only on the row), ``random``.
    ``value_noise`` multiplies values by log-normal noise, breaking exactness.
    """
    if price_noise < 0 or value_noise < 0:
        raise ValueError("noise levels must be >= 0")
    rng = np.random.default_rng(seed)
    p_rows = np.exp(rng.uniform(-2.0, 2.0, m))
    q_cols = np.exp(rng.uniform(-2.0, 2.0, n))
    prices = np.outer(p_rows, q_cols)
    if price_noise > 0:
        prices = prices * np.exp(price_noise * rng.standard_normal((m, n)))
    perm = rng.permutation(m)
    if value_mode == "monotone":
        values = np.cumsum(rng.uniform(0.0, 1.0, (m, n)), axis=0)[perm]
    elif value_mode == "ratio-monotone":
        rho = np.sort(rng.uniform(0.1, 2.0, m))[perm]
        values = prices * rho[:, None]
    elif value_mode == "random":
        values = rng.uniform(0.0, 1.0, (m, n))
    else:
        raise ValueError(f"unknown value_mode {value_mode!r}")
    if value_noise > 0:
        values = values * np.exp(value_noise * rng.standard_normal((m, n)))
    budget = budget_fraction * float(prices.sum())
    factorization = (p_rows, q_cols) if price_noise == 0 else None
    return Instance(prices, values, budget, factorization)
