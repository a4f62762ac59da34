"""The multiplication backends and their contracts.

Four built-ins: the untiled oracle, the cache-tiled sequential nest, and two
parallel variants (statically collapsed tile grid vs a task queue). The tiled
backends agree with the oracle up to summation reordering, and the parallel
ones are bitwise-identical to the sequential schedule at any thread count.
"""

from tilebench import (
    GenSpec,
    PoolConfig,
    TileConfig,
    generate,
    max_abs_rel_diff,
    naive_multiply,
    tiled_parallel_multiply,
    tiled_pool_multiply,
    tiled_seq_multiply,
)

# 33x33 deliberately does not divide by the 32-wide tile, so the right and
# bottom borders run through partial edge tiles.
a = generate(GenSpec(33, 33, seed=7))
b = generate(GenSpec(33, 33, seed=8))

oracle = naive_multiply(a, b)
tiled = tiled_seq_multiply(a, b, TileConfig(32))
print("edge tiles vs oracle, max relative diff:", max_abs_rel_diff(tiled, oracle))

# Tiling reorders each dot product into per-phase partial sums, so the match
# is only up to float rounding (typically ~1e-15, tolerance 1e-10). With a
# 1-wide tile the loop order degenerates to naive and the match is exact.
unit = tiled_seq_multiply(a, b, TileConfig(1))
print("tile edge 1 reproduces naive bitwise:", unit.tobytes() == oracle.tobytes())

# Each output tile has exactly one owner, and the phase loop inside a tile is
# always sequential, so the schedule cannot change the arithmetic: any thread
# count gives the same bits as the one-thread run.
seq_bytes = tiled_seq_multiply(a, b, TileConfig(32)).tobytes()
for threads in (1, 2, 4, 16):
    par = tiled_parallel_multiply(a, b, TileConfig(32), PoolConfig(threads))
    pool = tiled_pool_multiply(a, b, TileConfig(32), PoolConfig(threads))
    print(
        f"threads={threads:>2}: collapsed == seq: {par.tobytes() == seq_bytes}, "
        f"task queue == seq: {pool.tobytes() == seq_bytes}"
    )
