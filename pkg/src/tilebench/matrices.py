"""Dense matrix construction, deterministic generation, and comparison helpers.

Matrices are plain C-contiguous ``float64`` numpy arrays in row-major order;
element (i, j) lives at flat offset ``i * cols + j``. The same layout is shared
by every backend, host or device.

Random generation is backed by numpy's PCG64 (a permuted-congruential
generator) seeded from a single 64-bit integer, which gives bitwise-identical
output for identical specs on every platform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidDimensionError, InvalidRangeError, ShapeError

__all__ = ["GenSpec", "generate", "flop_count", "max_abs_rel_diff", "require_operands"]


@dataclass(frozen=True)
class GenSpec:
    """Recipe for one deterministic random matrix.

    Elements are drawn i.i.d. uniform on ``[lo, hi]`` (the upper endpoint is a
    measure-zero event and may not be attained at float granularity).
    """

    rows: int
    cols: int
    lo: float = 2.0
    hi: float = 5.0
    seed: int = 0

    def validate(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise InvalidDimensionError(
                f"matrix dimensions must be positive, got {self.rows}x{self.cols}"
            )
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            raise InvalidRangeError(f"bounds must be finite, got [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise InvalidRangeError(f"lo must not exceed hi, got [{self.lo}, {self.hi}]")
        if self.seed < 0:
            raise InvalidRangeError(f"seed must be a non-negative integer, got {self.seed}")


def generate(spec: GenSpec) -> np.ndarray:
    """Generate the matrix described by ``spec``.

    A pure function of the spec: equal specs return bitwise-identical arrays.
    """
    spec.validate()
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    u = rng.random((spec.rows, spec.cols))
    return spec.lo + u * (spec.hi - spec.lo)


def flop_count(n: int) -> int:
    """Exact floating point operation count for an n x n square product.

    Each of the n^2 dot products takes n multiplies and n - 1 adds, so the
    total is 2n^3 - n^2. Evaluated in Python integers, exact for any n.
    """
    if n < 1:
        raise InvalidDimensionError(f"matrix size must be positive, got {n}")
    n = int(n)
    return 2 * n**3 - n**2


def max_abs_rel_diff(a: np.ndarray, b: np.ndarray) -> float:
    """Largest elementwise relative difference between two equal-shape matrices.

    Per element: ``|a - b| / max(|a|, |b|, 1.0)``. Returns 0.0 exactly when the
    matrices agree elementwise.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    denom = np.maximum(np.maximum(np.abs(a), np.abs(b)), 1.0)
    return float(np.max(np.abs(a - b) / denom))


def require_operands(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Validate a multiplication pair and return both as C-contiguous float64."""
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    if a.ndim != 2 or b.ndim != 2:
        raise ShapeError(f"operands must be 2-D, got {a.ndim}-D and {b.ndim}-D")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(
            f"inner dimensions differ: {a.shape[0]}x{a.shape[1]} @ {b.shape[0]}x{b.shape[1]}"
        )
    return a, b
