"""Benchmark harness: per-size wall-clock timings with doubling ratios."""

from __future__ import annotations

import gc
import math
import time
from statistics import median

import numpy as np

from .decompose import decompose
from .graph import random_dag, transitive_closure
from .lca import all_pairs_lca
from .maxmin import maxmin_bucketed
from .spairs import s_pairs_table

SUITES = ("decompose", "lca", "maxmin")

# closure of a 0.1-density random DAG has ~n^2/2 edges at every size
DECOMPOSE_DENSITY = 0.1
LCA_DENSITY = 0.05


def timed_ms(fn, repeat: int = 1) -> float:
    """Median wall-clock ms over ``repeat`` calls, with the cyclic GC paused as timeit does."""
    runs = []
    for _ in range(repeat):
        gc.collect()
        was_enabled = gc.isenabled()
        gc.disable()
        try:
            t0 = time.perf_counter()
            fn()
            runs.append((time.perf_counter() - t0) * 1e3)
        finally:
            if was_enabled:
                gc.enable()
    return median(runs)


def bench_case(suite: str, n: int, seed: int, repeat: int = 1) -> dict:
    """Time one suite at one size; returns a row dict (times in ms)."""
    isq = max(1, math.isqrt(n - 1) + 1) if n > 1 else 1
    if suite == "decompose":
        gc = transitive_closure(random_dag(n, DECOMPOSE_DENSITY, seed))
        return {"n": n, "m": gc.m, "ell": isq, "ms": timed_ms(lambda: decompose(gc, isq), repeat)}
    if suite == "lca":
        g = random_dag(n, LCA_DENSITY, seed)
        s = np.random.default_rng(seed).choice(n, isq, replace=False)
        return {"n": n, "m": g.m, "ms": timed_ms(lambda: all_pairs_lca(g), repeat),
                "spairs_ms": timed_ms(lambda: s_pairs_table(g, s), repeat)}
    if suite == "maxmin":
        rng = np.random.default_rng(seed)
        a = rng.integers(0, n, size=(n, isq))
        return {"n": n, "p": isq, "ms": timed_ms(lambda: maxmin_bucketed(a, a.T), repeat)}
    raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")


def run_bench(suite: str, sizes, seed: int = 0, repeat: int = 1) -> list:
    """Rows for each size, with ``ratio`` = time / time at the previous size."""
    rows = []
    for n in sizes:
        row = bench_case(suite, int(n), seed, repeat)
        row["ratio"] = row["ms"] / rows[-1]["ms"] if rows and rows[-1]["ms"] > 0 else float("nan")
        rows.append(row)
    return rows


def format_table(rows: list) -> str:
    if not rows:
        return ""
    keys = list(rows[0])
    out = ["\t".join(keys)]
    for r in rows:
        out.append("\t".join(f"{r[k]:.3f}" if isinstance(r[k], float) else str(r[k]) for k in keys))
    return "\n".join(out) + "\n"
