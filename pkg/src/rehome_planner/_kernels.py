"""Numeric kernels behind the forecaster.

The Erlang B recurrence is the one genuinely hot loop in the planner: trunk
dimensioning sweeps evaluate it across whole (offered-load, line-count) grids,
and the required-lines search runs it incrementally per candidate. Kernels are
compiled with numba when available; setting ``REHOME_JIT=0`` selects the pure
numpy/Python implementations instead (useful for debugging and as the
reference path in ``benchmarks/bench_kernels.py``).

Both paths are importable directly (``*_py`` / ``*_jit``); the public names
are bound once at import time.
"""

from __future__ import annotations

import os

import numpy as np


def jit_enabled() -> bool:
    flag = os.environ.get("REHOME_JIT", "1").strip().lower()
    if flag in ("0", "false", "no", "off"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


JIT_ENABLED = jit_enabled()


# --------------------------------------------------------------------------
# Pure Python / numpy reference path
# --------------------------------------------------------------------------

def erlang_b_py(offered: float, lines: int) -> float:
    """Blocking probability via the stable recurrence.

    B(E, 0) = 1;  B(E, m) = E*B(E, m-1) / (m + E*B(E, m-1)).
    """
    b = 1.0
    for m in range(1, lines + 1):
        eb = offered * b
        b = eb / (m + eb)
    return b


def erlang_b_grid_py(offered: np.ndarray, lines: np.ndarray) -> np.ndarray:
    """Vectorized recurrence over paired (offered, lines) points.

    Runs the recurrence for all points simultaneously, freezing each point's
    value once its own line count is reached.
    """
    offered = np.asarray(offered, dtype=np.float64)
    lines = np.asarray(lines, dtype=np.int64)
    b = np.ones_like(offered)
    max_m = int(lines.max()) if lines.size else 0
    for m in range(1, max_m + 1):
        active = lines >= m
        eb = offered * b
        b = np.where(active, eb / (m + eb), b)
    return b


def erlang_b_lines_py(offered: float, target_blocking: float) -> int:
    """Smallest line count whose blocking does not exceed the target.

    Incremental recurrence: O(result) total work.
    """
    if offered <= 0.0:
        return 0
    b = 1.0
    m = 0
    while b > target_blocking:
        m += 1
        eb = offered * b
        b = eb / (m + eb)
    return m


# --------------------------------------------------------------------------
# numba path
# --------------------------------------------------------------------------

if JIT_ENABLED:
    from numba import njit

    @njit(cache=True)
    def erlang_b_jit(offered, lines):
        b = 1.0
        for m in range(1, lines + 1):
            eb = offered * b
            b = eb / (m + eb)
        return b

    @njit(cache=True)
    def erlang_b_grid_jit(offered, lines):
        n = offered.shape[0]
        out = np.empty(n, dtype=np.float64)
        for i in range(n):
            b = 1.0
            e = offered[i]
            for m in range(1, lines[i] + 1):
                eb = e * b
                b = eb / (m + eb)
            out[i] = b
        return out

    @njit(cache=True)
    def erlang_b_lines_jit(offered, target_blocking):
        if offered <= 0.0:
            return 0
        b = 1.0
        m = 0
        while b > target_blocking:
            m += 1
            eb = offered * b
            b = eb / (m + eb)
        return m

    erlang_b = erlang_b_jit
    erlang_b_lines = erlang_b_lines_jit

    def erlang_b_grid(offered, lines):
        offered = np.ascontiguousarray(offered, dtype=np.float64)
        lines = np.ascontiguousarray(lines, dtype=np.int64)
        return erlang_b_grid_jit(offered, lines)

else:
    erlang_b = erlang_b_py
    erlang_b_grid = erlang_b_grid_py
    erlang_b_lines = erlang_b_lines_py


def warmup() -> None:
    """Trigger JIT compilation so timed paths never pay compile cost."""
    erlang_b(1.0, 1)
    erlang_b_grid(np.array([1.0]), np.array([1]))
    erlang_b_lines(1.0, 0.5)
