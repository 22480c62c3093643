#!/usr/bin/env python3
"""Benchmark the compiled Airy core against the pure NumPy fallback.

Times raw kernel throughput on batched evaluations and one realistic
workload (the 30x30 overlap matrix, which is dominated by Ai calls
inside the adaptive quadrature).

Run:  python3 benchmarks/bench_airy.py
"""

import time

import numpy as np

from qbounce import _airy_py

try:
    from qbounce import _airy_cy
except ImportError:
    _airy_cy = None


def time_call(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels():
    rng = np.random.default_rng(0)
    print(f"{'batch size':>12} {'python':>14} {'compiled':>14} {'speedup':>9}")
    for size in (1_000, 10_000, 100_000, 1_000_000):
        xs = rng.uniform(-60.0, 15.0, size)
        t_py = time_call(_airy_py.ai_and_prime, xs)
        line = f"{size:>12,} {size / t_py:>12,.0f}/s"
        if _airy_cy is not None:
            t_cy = time_call(_airy_cy.ai_and_prime, xs)
            line += f" {size / t_cy:>12,.0f}/s {t_py / t_cy:>8.1f}x"
        else:
            line += f" {'not built':>14} {'-':>9}"
        print(line)


def bench_overlap_matrix():
    import os
    from importlib import reload

    import qbounce.airy
    import qbounce.eigenstates

    def gram_time():
        reload(qbounce.airy)
        reload(qbounce.eigenstates)
        table = qbounce.eigenstates.EigenstateTable(n_max=40)
        t0 = time.perf_counter()
        for m in range(1, 31):
            for n in range(m, 31):
                table.overlap(m, n)
        return time.perf_counter() - t0

    results = {}
    if _airy_cy is not None:
        os.environ.pop("QBOUNCE_PURE_PYTHON", None)
        results["compiled"] = gram_time()
    os.environ["QBOUNCE_PURE_PYTHON"] = "1"
    results["python"] = gram_time()
    os.environ.pop("QBOUNCE_PURE_PYTHON", None)
    reload(qbounce.airy)
    reload(qbounce.eigenstates)

    print("\n30x30 overlap matrix (adaptive quadrature):")
    for name, seconds in results.items():
        print(f"  {name:>8}: {seconds:.2f} s")
    if len(results) == 2:
        print(f"  speedup: {results['python'] / results['compiled']:.1f}x")


if __name__ == "__main__":
    print(f"compiled core available: {_airy_cy is not None}\n")
    bench_kernels()
    bench_overlap_matrix()
