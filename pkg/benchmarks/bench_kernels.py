"""Compiled vs pure-Python kernel timings.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from multibid import kernels


def _bf_case(n_nodes: int, n_edges: int, seed: int = 0):
    # Negative edges on a DAG, listed against the topological order: many relaxation passes, no cycle.
    rng = np.random.default_rng(seed)
    a = rng.integers(0, n_nodes, n_edges)
    b = rng.integers(0, n_nodes, n_edges)
    src, dst = np.minimum(a, b), np.maximum(a, b)
    keep = src != dst
    src, dst = src[keep], dst[keep]
    order = np.argsort(-src, kind="stable")
    return n_nodes, src[order], dst[order], -rng.uniform(0.0, 1.0, src.size)


def _mck_case(groups: int, options: int, capacity: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    costs = np.cumsum(rng.integers(0, 6, (groups, options)), axis=1).astype(np.int64)
    costs[:, 0] = 0
    values = np.cumsum(rng.uniform(0, 1, (groups, options)), axis=1)
    values[:, 0] = 0.0
    return costs, values, capacity


CASES = {
    "bellman_ford 40 nodes / 400 edges": ("bellman_ford", _bf_case(40, 400)),
    "bellman_ford 200 nodes / 4000 edges": ("bellman_ford", _bf_case(200, 4000)),
    "mck_dp 16 groups x 17 options, W=200": ("mck_dp", _mck_case(16, 17, 200)),
    "mck_dp 64 groups x 65 options, W=200": ("mck_dp", _mck_case(64, 65, 200)),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = {"python": kernels.python_backend}
    if kernels.compiled_backend is not None:
        backends["cython"] = kernels.compiled_backend
    else:
        print("compiled extension not built; timing the fallback only")
    print(f"{'case':40s} " + " ".join(f"{b:>12s}" for b in backends) + "  speedup")
    for name, (fn, case) in CASES.items():
        times = {}
        for b, mod in backends.items():
            f = getattr(mod, fn)
            number = 3
            times[b] = min(timeit.repeat(lambda: f(*case), number=number, repeat=args.repeat)) / number
        row = " ".join(f"{times[b] * 1e3:10.3f}ms" for b in backends)
        speed = f"{times['python'] / times['cython']:7.1f}x" if "cython" in times else ""
        print(f"{name:40s} {row}  {speed}")


if __name__ == "__main__":
    main()
