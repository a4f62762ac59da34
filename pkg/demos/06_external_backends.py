"""Registering an external backend (here: numpy's BLAS-backed matmul).

Vendor libraries are not bundled, but any callable taking (a, b) and
returning the product can be registered under a unique name and then
benchmarked through the same harness, CSV files, and CLI as the built-ins
(`tilebench run --backends naive,blas-numpy ...`).
"""

import numpy as np

from tilebench import (
    BackendDescriptor,
    GenSpec,
    RunConfig,
    TileConfig,
    generate,
    max_abs_rel_diff,
    naive_multiply,
    run_trials,
)
from tilebench.backends import BackendRegistry, PoolConfig

# A private registry keeps the demo self-contained; register_external() does
# the same against the process-wide default registry used by the CLI.
registry = BackendRegistry()
registry.register_external(
    BackendDescriptor("blas-numpy", parallel=True, requires_external=True),
    lambda a, b: a @ b,
)
print("selectable backends:", ", ".join(registry.names()))

# External results flow through the same oracle check as everything else.
a = generate(GenSpec(65, 65, seed=1))
b = generate(GenSpec(65, 65, seed=2))
blas = registry.resolve("blas-numpy", TileConfig(), PoolConfig(1))
print("blas vs oracle:", max_abs_rel_diff(blas(a, b), naive_multiply(a, b)))

# And through the same trial protocol.
config = RunConfig(
    backends=("naive", "tiled-pool", "blas-numpy"),
    sizes=(64, 128),
    trials=5,
    seed=99,
    threads=PoolConfig(2),
)
records, _ = run_trials(config, registry=registry)
for name in config.backends:
    rates = [r.flops for r in records if r.backend == name and r.n == 128]
    print(f"{name:>11} @ n=128: median {np.median(rates):.3e} FLOPS")

# Duplicate names are refused, so two libraries can't shadow each other.
try:
    registry.register_external(BackendDescriptor("blas-numpy"), lambda a, b: a @ b)
except Exception as exc:
    print("duplicate registration:", exc)
