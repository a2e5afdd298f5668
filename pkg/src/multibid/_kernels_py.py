"""Pure-Python (numpy) implementations of the hot loops.

Both functions have a compiled twin in ``_kernels.pyx``; ``multibid.kernels``
picks one at import time.
"""
from __future__ import annotations

import numpy as np


def bellman_ford(n_nodes, src, dst, weight):
    """Shortest distances from a virtual source joined to every node by a 0 edge.

    Returns ``(feasible, dist)``. ``feasible`` is False when a negative cycle
    exists, in which case ``dist`` is meaningless.
    """
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    weight = np.asarray(weight, dtype=np.float64)
    dist = np.zeros(n_nodes, dtype=np.float64)
    changed = True
    for _ in range(n_nodes + 1):
        cand = dist[src] + weight
        new = dist.copy()
        np.minimum.at(new, dst, cand)
        changed = bool((new < dist).any())
        dist = new
        if not changed:
            break
    return (not changed), dist


def mck_dp(costs, values, capacity):
    """Multiple-choice knapsack: pick exactly one option per group.

    ``costs[g, k]`` is an integer cost (negative marks a missing option),
    ``values[g, k]`` its value. Returns ``(best, choice)`` where ``best[x]`` is
    the best total value with total cost at most ``x`` and ``choice[g, x]`` the
    option group ``g`` takes when ``x`` capacity remains for groups ``0..g``.
    Ties keep the lowest option index.
    """
    costs = np.asarray(costs, dtype=np.int64)
    values = np.asarray(values, dtype=np.float64)
    n_groups, n_choices = costs.shape
    cur = np.zeros(capacity + 1)
    choice = np.full((n_groups, capacity + 1), -1, dtype=np.int32)
    xs = np.arange(capacity + 1)
    for g in range(n_groups):
        best = np.full(capacity + 1, -np.inf)
        arg = np.full(capacity + 1, -1, dtype=np.int32)
        for k in range(n_choices):
            ck = costs[g, k]
            if ck < 0 or ck > capacity:
                continue
            cand = np.full(capacity + 1, -np.inf)
            cand[ck:] = cur[xs[ck:] - ck] + values[g, k]
            better = cand > best
            best[better] = cand[better]
            arg[better] = k
        cur = best
        choice[g] = arg
    return cur, choice
