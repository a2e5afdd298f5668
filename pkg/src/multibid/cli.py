"""Command-line front end: gen, solve, compare, validate.

Exit codes: 0 success, 2 usage error, 3 a solver returned an over-budget result.
"""
from __future__ import annotations

import argparse
import csv
import glob
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np

from .algorithms import SOLVERS, tower_solve_area
from .errors import MultibidError
from .generators import (
    gen_antidiagonal_hard,
    gen_diagonal_hard,
    gen_independent_set_instance,
    gen_multiplicative,
)
from .instance import BidAssignment, Instance, Solution, capture
from .oracles import DEFAULT_ORACLE_CAP, brute_force_multiplicative_optimum, individual_optimum
from .validate import fit_multiplicative, monotonicity_score

FAMILIES = ("diagonal", "antidiagonal", "independent-set", "multiplicative")
ALGORITHMS = tuple(SOLVERS) + ("oracle",)
CSV_COLUMNS = ("instance", "algorithm", "value", "pct_of_opt", "spend", "ms")


class UsageError(MultibidError):
    pass


class InfeasibleResult(MultibidError):
    pass


def generate(family: str, params: dict[str, Any]) -> Instance:
    p = dict(params)
    if family == "diagonal":
        return gen_diagonal_hard(int(p.get("n", 4)))
    if family == "antidiagonal":
        return gen_antidiagonal_hard(int(p.get("n", 8)), int(p.get("c", 2)))
    if family == "independent-set":
        graph = p.get("graph")
        if graph is None:
            raise UsageError("independent-set needs params.graph (adjacency lists)")
        return gen_independent_set_instance(graph, p.get("budget"), p.get("independent_set"), p.get("n"))
    if family == "multiplicative":
        return gen_multiplicative(
            int(p.get("m", 16)),
            int(p.get("n", 8)),
            seed=int(p.get("seed", 0)),
            price_noise=float(p.get("price_noise", 0.0)),
            value_mode=p.get("value_mode", "monotone"),
            value_noise=float(p.get("value_noise", 0.0)),
            budget_fraction=float(p.get("budget_fraction", 0.25)),
        )
    raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def cmd_gen(family: str, params: dict[str, Any], out_path: Optional[str] = None) -> str:
    text = generate(family, params).to_json() + "\n"
    if out_path is None or out_path == "-":
        sys.stdout.write(text)
    else:
        Path(out_path).write_text(text)
    return text


def load_instance(path: str) -> Instance:
    try:
        return Instance.from_json(Path(path).read_text())
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read instance {path}: {exc}") from exc


def run_solver(instance: Instance, algorithm: str, params: dict[str, Any]) -> Solution:
    if algorithm == "oracle":
        cap_limit = int(params.get("oracle_cap", DEFAULT_ORACLE_CAP))
        cap, bids = brute_force_multiplicative_optimum(instance, cap_limit)
        return Solution(bids, cap, "oracle", dict(params))
    if algorithm == "tower" and params.get("use_area_heuristic"):
        return tower_solve_area(instance, **_solver_params(params))
    try:
        solver = SOLVERS[algorithm]
    except KeyError:
        raise UsageError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}") from None
    return solver(instance, **_solver_params(params))


def _solver_params(params: dict[str, Any]) -> dict[str, Any]:
    keep = ("budget_buckets", "delta", "seed")
    return {k: params[k] for k in keep if k in params}


def _pct(value: float, opt: float) -> Optional[float]:
    if opt > 0:
        return value / opt
    return 1.0 if value == 0 else None


def solve_report(instance: Instance, algorithm: str, params: dict[str, Any]) -> dict[str, Any]:
    """Run one solver and re-derive its totals from the bids alone."""
    t0 = time.perf_counter()
    sol = run_solver(instance, algorithm, params)
    wall_ms = (time.perf_counter() - t0) * 1e3
    cap = capture(instance, sol.bids)
    if cap.spend > instance.budget:
        raise InfeasibleResult(f"{algorithm} spent {cap.spend} > budget {instance.budget}")
    opt = individual_optimum(instance).value
    return {
        "algorithm": algorithm,
        "value": cap.value,
        "spend": cap.spend,
        "budget": instance.budget,
        "opt_value": opt,
        "pct_of_opt": _pct(cap.value, opt),
        "bids": sol.bids.to_dict(),
        "cells": [list(c) for c in cap.sorted_cells()],
        "mismatch": sol.mismatch,
        "wall_ms": wall_ms,
    }


def cmd_solve(instance_path: str, algorithm: str, params: dict[str, Any]) -> dict[str, Any]:
    if algorithm not in ALGORITHMS:
        raise UsageError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")
    return solve_report(load_instance(instance_path), algorithm, params)


def _expand(patterns: Sequence[str] | str) -> list[str]:
    if isinstance(patterns, str):
        patterns = [patterns]
    paths = sorted({p for pat in patterns for p in glob.glob(pat)})
    if not paths:
        raise UsageError(f"no instance files match {list(patterns)}")
    return paths


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("MULTIBID_THREADS", "1")))
    except ValueError:
        return 1


def summarize(rows: list[dict[str, Any]], algorithms: Sequence[str]) -> dict[str, Any]:
    per_alg: dict[str, Any] = {}
    for alg in algorithms:
        pct = np.array([r["pct_of_opt"] for r in rows if r["algorithm"] == alg and r["pct_of_opt"] is not None])
        if pct.size:
            per_alg[alg] = {
                "count": int(pct.size),
                "mean": float(pct.mean()),
                "median": float(np.median(pct)),
                "p25": float(np.percentile(pct, 25)),
                "p75": float(np.percentile(pct, 75)),
            }
        else:
            per_alg[alg] = {"count": 0}
    by_inst: dict[str, dict[str, float]] = {}
    for r in rows:
        by_inst.setdefault(r["instance"], {})[r["algorithm"]] = r["value"]
    wins: dict[str, dict[str, float]] = {}
    for a in algorithms:
        wins[a] = {}
        for b in algorithms:
            if a == b:
                continue
            pairs = [(v[a], v[b]) for v in by_inst.values() if a in v and b in v]
            wins[a][b] = sum(1 for x, y in pairs if x > y + 1e-12 * max(1.0, abs(y))) / len(pairs) if pairs else 0.0
    return {"instances": len(by_inst), "algorithms": per_alg, "win_rate": wins}


def _fmt(x: Any) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def cmd_compare(
    instance_glob: Sequence[str] | str,
    algorithms: Sequence[str],
    out_csv: Optional[str],
    params: Optional[dict[str, Any]] = None,
    timing: bool = False,
) -> tuple[str, dict[str, Any]]:
    """Run every algorithm on every instance; returns (csv text, summary).

    The ``ms`` column is left empty unless ``timing`` is set so that repeated
    runs produce identical files.
    """
    params = dict(params or {})
    for a in algorithms:
        if a not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {a!r}; choose from {', '.join(ALGORITHMS)}")
    paths = _expand(instance_glob)
    instances = {p: load_instance(p) for p in paths}
    tasks = [(p, a) for p in paths for a in algorithms]

    def work(task):
        path, alg = task
        rep = solve_report(instances[path], alg, params)
        return {
            "instance": path,
            "algorithm": alg,
            "value": rep["value"],
            "pct_of_opt": rep["pct_of_opt"],
            "spend": rep["spend"],
            "ms": rep["wall_ms"] if timing else None,
        }

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        rows = list(pool.map(work, tasks))
    rows.sort(key=lambda r: (r["instance"], r["algorithm"]))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([_fmt(r[c]) for c in CSV_COLUMNS])
    text = buf.getvalue()
    if out_csv and out_csv != "-":
        Path(out_csv).write_text(text)
    return text, summarize(rows, algorithms)


def cmd_validate(instance_path: str, seed: int = 0, axis: str = "rows") -> dict[str, Any]:
    inst = load_instance(instance_path)
    return {
        "r_squared": fit_multiplicative(inst.prices).r_squared,
        "value_monotonicity": monotonicity_score(inst, axis=axis, mode="value", seed=seed),
        "ratio_monotonicity": monotonicity_score(inst, axis=axis, mode="ratio", seed=seed),
    }


def _params(args) -> dict[str, Any]:
    params: dict[str, Any] = {}
    if getattr(args, "params", None):
        try:
            params = json.loads(args.params)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--params is not valid JSON: {exc}") from exc
        if not isinstance(params, dict):
            raise UsageError("--params must be a JSON object")
    if getattr(args, "seed", None) is not None:
        params["seed"] = args.seed
    if getattr(args, "budget_buckets", None) is not None:
        params["budget_buckets"] = args.budget_buckets
    if getattr(args, "oracle_cap", None) is not None:
        params["oracle_cap"] = args.oracle_cap
    return params


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--params", help='solver params as JSON, e.g. {"budget_buckets": 400}')
    p.add_argument("--seed", type=int)
    p.add_argument("--budget-buckets", type=int)
    p.add_argument("--oracle-cap", type=int)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="multibid", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write an instance JSON")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--c", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--price-noise", type=float)
    g.add_argument("--value-mode", choices=("monotone", "ratio-monotone", "random"))
    g.add_argument("--value-noise", type=float)
    g.add_argument("--budget-fraction", type=float)
    g.add_argument("--budget", type=float)
    g.add_argument("--graph", help="JSON file with adjacency lists (independent-set family)")
    g.add_argument("--params", help="generator params as JSON")
    g.add_argument("--out", default="-")

    s = sub.add_parser("solve", help="run one algorithm on one instance")
    s.add_argument("instance")
    s.add_argument("--alg", required=True, choices=ALGORITHMS)
    _add_solver_flags(s)
    s.add_argument("--out", default="-")

    c = sub.add_parser("compare", help="run algorithms over many instances, write CSV + summary")
    c.add_argument("instances", nargs="+", help="instance paths or glob patterns")
    c.add_argument("--alg", required=True, help="comma-separated algorithm names")
    _add_solver_flags(c)
    c.add_argument("--out", default="-", help="CSV path")
    c.add_argument("--summary", help="also write the summary JSON here")
    c.add_argument("--timing", action="store_true", help="fill the ms column (non-deterministic)")

    v = sub.add_parser("validate", help="report multiplicative fit and monotonicity")
    v.add_argument("instance")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--axis", choices=("rows", "cols"), default="rows")
    return ap


def _gen_params(args) -> dict[str, Any]:
    params = _params(args)
    for key in ("n", "m", "c", "price_noise", "value_mode", "value_noise", "budget_fraction", "budget"):
        val = getattr(args, key)
        if val is not None:
            params[key] = val
    if args.graph:
        try:
            params["graph"] = json.loads(Path(args.graph).read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read graph {args.graph}: {exc}") from exc
    return params


def _emit(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            cmd_gen(args.family, _gen_params(args), args.out)
        elif args.command == "solve":
            rep = cmd_solve(args.instance, args.alg, _params(args))
            _emit(json.dumps(rep, indent=2) + "\n", args.out)
        elif args.command == "compare":
            algs = [a.strip() for a in args.alg.split(",") if a.strip()]
            text, summary = cmd_compare(args.instances, algs, args.out, _params(args), args.timing)
            if args.out == "-":
                sys.stdout.write(text)
            blob = json.dumps(summary, indent=2, sort_keys=True) + "\n"
            if args.summary:
                Path(args.summary).write_text(blob)
            else:
                sys.stderr.write(blob)
        elif args.command == "validate":
            sys.stdout.write(json.dumps(cmd_validate(args.instance, args.seed, args.axis), indent=2) + "\n")
    except InfeasibleResult as exc:
        print(f"multibid: {exc}", file=sys.stderr)
        return 3
    except MultibidError as exc:
        print(f"multibid: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
