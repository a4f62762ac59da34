"""Multiplication backends under test and the name-based backend registry.

Four built-ins:

``naive``
    Untiled triple loop; the correctness oracle everything else is checked
    against.
``tiled-seq``
    Cache-tiled loop nest (i0, j0, k0, i, j, k) over one thread.
``tiled-parallel``
    The two outermost tile loops collapsed into a flat range that is split
    into contiguous chunks, one per worker thread (a static schedule).
``tiled-pool``
    Every output tile pushed as a task onto a shared queue; a pool of worker
    threads drains it under the queue's mutual exclusion.

Every call is externally pure: inputs are never written, the product is
freshly allocated, and workers are created and joined inside the call, so
concurrent calls into any backend are safe.

Because each output tile is owned by exactly one worker and the k0 phases
inside a tile always run in sequence through the same compiled kernel, both
parallel variants return output bitwise-identical to ``tiled-seq`` for any
thread count.
"""

from __future__ import annotations

import os
import queue
import threading
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import BackendConflictError, InvalidConfigError, UnknownBackendError
from .kernels import naive_kernel, tile_range_kernel
from .matrices import require_operands

__all__ = [
    "TileConfig",
    "PoolConfig",
    "BackendDescriptor",
    "BackendRegistry",
    "naive_multiply",
    "tiled_seq_multiply",
    "tiled_parallel_multiply",
    "tiled_pool_multiply",
    "plan_partitions",
    "default_registry",
    "register_external",
    "BUILTIN_BACKENDS",
]

MultiplyFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


def hardware_threads() -> int:
    return os.cpu_count() or 1


@dataclass(frozen=True)
class TileConfig:
    """Square tile edge used by all tiled backends (default 32)."""

    k: int = 32

    def validate(self) -> None:
        if self.k < 1:
            raise InvalidConfigError(f"tile edge must be >= 1, got {self.k}")


@dataclass(frozen=True)
class PoolConfig:
    """Worker count for the parallel backends (default: hardware cores)."""

    threads: int = field(default_factory=hardware_threads)

    def validate(self) -> None:
        if self.threads < 1:
            raise InvalidConfigError(f"thread count must be >= 1, got {self.threads}")


@dataclass(frozen=True)
class BackendDescriptor:
    name: str
    parallel: bool = False
    requires_external: bool = False


def naive_multiply(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Reference product: c[i, j] = sum over k of a[i, k] * b[k, j]."""
    a, b = require_operands(a, b)
    out = np.zeros((a.shape[0], b.shape[1]))
    naive_kernel(a, b, out)
    return out


def _tile_grid(a: np.ndarray, b: np.ndarray, tile: TileConfig) -> int:
    it = (a.shape[0] + tile.k - 1) // tile.k
    jt = (b.shape[1] + tile.k - 1) // tile.k
    return it * jt


def tiled_seq_multiply(a, b, tile: TileConfig = TileConfig()) -> np.ndarray:
    """Cache-tiled product on one thread.

    Dimensions that do not divide by the tile edge fall into partial edge
    tiles; the result matches ``naive_multiply`` up to summation reordering.
    """
    a, b = require_operands(a, b)
    tile.validate()
    out = np.zeros((a.shape[0], b.shape[1]))
    tile_range_kernel(a, b, out, 0, _tile_grid(a, b, tile), tile.k)
    return out


def plan_partitions(num_tiles: int, threads: int) -> list[tuple[int, int]]:
    """Split the flattened tile range into contiguous per-worker chunks.

    Every tile lands in exactly one chunk; empty chunks are dropped. This is
    the whole of the static schedule, so tile ownership is decided here and
    nowhere else.
    """
    workers = min(threads, num_tiles)
    if workers <= 0:
        return []
    base, extra = divmod(num_tiles, workers)
    chunks = []
    start = 0
    for w in range(workers):
        stop = start + base + (1 if w < extra else 0)
        chunks.append((start, stop))
        start = stop
    return chunks


def tiled_parallel_multiply(
    a, b, tile: TileConfig = TileConfig(), pool: PoolConfig | None = None
) -> np.ndarray:
    """Tiled product with the (i0, j0) tile grid statically split across threads."""
    a, b = require_operands(a, b)
    tile.validate()
    pool = pool if pool is not None else PoolConfig()
    pool.validate()
    out = np.zeros((a.shape[0], b.shape[1]))
    chunks = plan_partitions(_tile_grid(a, b, tile), pool.threads)
    if len(chunks) == 1:
        tile_range_kernel(a, b, out, chunks[0][0], chunks[0][1], tile.k)
        return out
    workers = [
        threading.Thread(target=tile_range_kernel, args=(a, b, out, start, stop, tile.k))
        for start, stop in chunks
    ]
    for w in workers:
        w.start()
    for w in workers:
        w.join()
    return out


def tiled_pool_multiply(
    a, b, tile: TileConfig = TileConfig(), pool: PoolConfig | None = None
) -> np.ndarray:
    """Tiled product where each output tile is one task on a shared queue."""
    a, b = require_operands(a, b)
    tile.validate()
    pool = pool if pool is not None else PoolConfig()
    pool.validate()
    out = np.zeros((a.shape[0], b.shape[1]))
    tasks: queue.Queue[int] = queue.Queue()
    for idx in range(_tile_grid(a, b, tile)):
        tasks.put(idx)

    def worker():
        while True:
            try:
                idx = tasks.get_nowait()
            except queue.Empty:
                return
            tile_range_kernel(a, b, out, idx, idx + 1, tile.k)
            tasks.task_done()

    workers = [threading.Thread(target=worker) for _ in range(pool.threads)]
    for w in workers:
        w.start()
    for w in workers:
        w.join()
    return out


class BackendRegistry:
    """Name-based lookup of multiplication backends.

    Built-ins take the tile/pool configuration at resolve time; externally
    registered functions are plain ``fn(a, b) -> matrix`` callables (vendor
    BLAS wrappers and the like) and ignore both configs.
    """

    def __init__(self, include_builtins: bool = True):
        self._entries: dict[str, tuple[BackendDescriptor, Callable]] = {}
        if include_builtins:
            for descriptor, build in BUILTIN_BACKENDS:
                self._register(descriptor, build)

    def _register(self, descriptor: BackendDescriptor, build) -> BackendDescriptor:
        if descriptor.name in self._entries:
            raise BackendConflictError(f"backend {descriptor.name!r} is already registered")
        self._entries[descriptor.name] = (descriptor, build)
        return descriptor

    def register_external(self, descriptor: BackendDescriptor, fn: MultiplyFn) -> BackendDescriptor:
        """Register a ready-made multiplication function under a unique name."""
        return self._register(descriptor, lambda tile, pool: fn)

    def unregister(self, name: str) -> None:
        self._entries.pop(name, None)

    def names(self) -> list[str]:
        return list(self._entries)

    def descriptor(self, name: str) -> BackendDescriptor:
        try:
            return self._entries[name][0]
        except KeyError:
            raise UnknownBackendError(self._unknown_message(name)) from None

    def resolve(self, name: str, tile: TileConfig, pool: PoolConfig) -> MultiplyFn:
        try:
            _, build = self._entries[name]
        except KeyError:
            raise UnknownBackendError(self._unknown_message(name)) from None
        return build(tile, pool)

    def _unknown_message(self, name: str) -> str:
        return f"unknown backend {name!r}; registered: {', '.join(self._entries)}"


BUILTIN_BACKENDS = [
    (
        BackendDescriptor("naive"),
        lambda tile, pool: naive_multiply,
    ),
    (
        BackendDescriptor("tiled-seq"),
        lambda tile, pool: lambda a, b: tiled_seq_multiply(a, b, tile),
    ),
    (
        BackendDescriptor("tiled-parallel", parallel=True),
        lambda tile, pool: lambda a, b: tiled_parallel_multiply(a, b, tile, pool),
    ),
    (
        BackendDescriptor("tiled-pool", parallel=True),
        lambda tile, pool: lambda a, b: tiled_pool_multiply(a, b, tile, pool),
    ),
]

_default_registry: BackendRegistry | None = None


def default_registry() -> BackendRegistry:
    """The process-wide registry holding the built-ins plus external additions."""
    global _default_registry
    if _default_registry is None:
        _default_registry = BackendRegistry()
    return _default_registry


def register_external(descriptor: BackendDescriptor, fn: MultiplyFn) -> BackendDescriptor:
    """Register an external backend on the default registry."""
    return default_registry().register_external(descriptor, fn)
