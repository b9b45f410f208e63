#!/usr/bin/env python3
"""Side-by-side benchmark: numba kernels vs the pure numpy/Python path.

Times the blocking-probability grid evaluation and the required-lines sweep
at sizes a planning run actually hits (threshold sweeps across whole switch
inventories). JIT compilation is warmed up before timing. Run:

    python benchmarks/bench_kernels.py

Set REHOME_JIT=0 to confirm the package itself falls back to the pure path.
"""

import time

import numpy as np

from rehome_planner import _kernels

if not _kernels.JIT_ENABLED:
    print("numba path disabled (REHOME_JIT=0 or numba missing); nothing to compare")
    raise SystemExit(0)


def time_it(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    print("warming up JIT compilation...")
    t0 = time.perf_counter()
    _kernels.warmup()
    print(f"warmup: {time.perf_counter() - t0:.2f}s\n")

    rng = np.random.default_rng(1)
    print(f"{'grid points':>12}  {'numpy (s)':>10}  {'numba (s)':>10}  {'speedup':>8}")
    print("-" * 48)
    for n in (1_000, 10_000, 100_000):
        offered = rng.uniform(0.1, 200.0, size=n)
        lines = rng.integers(1, 400, size=n)
        t_np = time_it(lambda: _kernels.erlang_b_grid_py(offered, lines))
        t_nb = time_it(lambda: _kernels.erlang_b_grid(offered, lines))
        ok = np.array_equal(
            _kernels.erlang_b_grid(offered, lines), _kernels.erlang_b_grid_py(offered, lines)
        )
        print(f"{n:>12}  {t_np:>10.4f}  {t_nb:>10.4f}  {t_np / t_nb:>7.1f}x  {'ok' if ok else 'MISMATCH'}")

    print()
    print(f"{'line sweeps':>12}  {'python (s)':>10}  {'numba (s)':>10}  {'speedup':>8}")
    print("-" * 48)
    for n in (1_000, 10_000):
        offered = rng.uniform(0.5, 300.0, size=n)

        def sweep_py():
            for e in offered:
                _kernels.erlang_b_lines_py(float(e), 0.01)

        def sweep_nb():
            for e in offered:
                _kernels.erlang_b_lines(float(e), 0.01)

        t_py = time_it(sweep_py, repeats=3)
        t_nb = time_it(sweep_nb, repeats=3)
        print(f"{n:>12}  {t_py:>10.4f}  {t_nb:>10.4f}  {t_py / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
