#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Run from the repo root after an editable install:

    python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from gmcs._core import fallback

try:
    from gmcs._core import _kernels
except ImportError:
    _kernels = None


def timeit(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_reg_inc_beta(impl):
    xs = np.linspace(0.0, 1.0, 100_000)
    return timeit(lambda: impl.reg_inc_beta_many(xs, 8.0, 0.5))


def bench_closure(impl):
    rng = np.random.default_rng(0)
    vectors = rng.uniform(0, 1, (50, 10))
    thr = np.array([0.1 / k for k in range(1, 11)])

    def run():
        for p in vectors:
            impl.closure_scan(p, thr)

    return timeit(run, repeats=3)


def main():
    rows = []
    for name, bench in [
        ("incomplete beta, 100k points", bench_reg_inc_beta),
        ("closure scan, 50 x M=10", bench_closure),
    ]:
        t_fallback = bench(fallback)
        t_compiled = bench(_kernels) if _kernels is not None else None
        rows.append((name, t_compiled, t_fallback))

    print(f"{'kernel':<32} {'compiled':>12} {'fallback':>12} {'speedup':>9}")
    for name, tc, tf in rows:
        if tc is None:
            print(f"{name:<32} {'(not built)':>12} {tf:>11.4f}s {'-':>9}")
        else:
            print(f"{name:<32} {tc:>11.4f}s {tf:>11.4f}s {tf / tc:>8.1f}x")


if __name__ == "__main__":
    main()
