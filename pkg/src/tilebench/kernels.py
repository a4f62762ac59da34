"""Compiled multiplication kernels.

All kernels release the GIL so worker threads overlap, and are compiled
without fastmath: the floating point op sequence is exactly what the source
says, which is what makes bitwise determinism across schedules testable.

Every tiled backend funnels through :func:`tile_range_kernel` so each output
tile is computed by one machine-code path regardless of which thread runs it.
"""

from __future__ import annotations

import numpy as np
from numba import njit

__all__ = ["naive_kernel", "tile_range_kernel", "warm_up"]


@njit(cache=True, nogil=True)
def naive_kernel(a, b, out):
    # c[i, j] = sum_k a[i, k] * b[k, j], inner sum in index order.
    m, kk = a.shape
    n = b.shape[1]
    for i in range(m):
        for j in range(n):
            acc = 0.0
            for k in range(kk):
                acc += a[i, k] * b[k, j]
            out[i, j] = acc


@njit(cache=True, nogil=True)
def tile_range_kernel(a, b, out, start, stop, tk):
    # Processes output tiles [start, stop) of the row-major (i0, j0) tile grid.
    # Per tile: phases k0 run in sequence; each dot product accumulates in a
    # local running sum and hits memory once per phase. Loop bounds are hoisted
    # into locals so edge tiles pay the min() once.
    m, kk = a.shape
    n = b.shape[1]
    jt = (n + tk - 1) // tk
    for idx in range(start, stop):
        i0 = (idx // jt) * tk
        j0 = (idx % jt) * tk
        i_end = min(i0 + tk, m)
        j_end = min(j0 + tk, n)
        for k0 in range(0, kk, tk):
            k_end = min(k0 + tk, kk)
            for i in range(i0, i_end):
                for j in range(j0, j_end):
                    acc = 0.0
                    for k in range(k0, k_end):
                        acc += a[i, k] * b[k, j]
                    out[i, j] += acc


def warm_up() -> None:
    """Force JIT compilation (or cache load) of all kernels."""
    a = np.ones((2, 2))
    b = np.ones((2, 2))
    naive_kernel(a, b, np.zeros((2, 2)))
    tile_range_kernel(a, b, np.zeros((2, 2)), 0, 1, 2)
