"""Matrix generation and the exact FLOP count.

Every benchmark trial multiplies freshly generated dense float64 matrices
with elements drawn uniform from [2.0, 5.0]. Generation is a pure function
of its spec, so any trial's operands can be regenerated bit-for-bit later.
"""

import numpy as np

from tilebench import GenSpec, flop_count, generate

# A 4x4 matrix with the default benchmark bounds. The seed fully determines
# the content (PCG64 underneath), so the same spec always gives the same bits.
spec = GenSpec(rows=4, cols=4, lo=2.0, hi=5.0, seed=42)
a = generate(spec)
print(a)

again = generate(spec)
print("bitwise identical on regeneration:", a.tobytes() == again.tobytes())

# All elements live inside the requested bounds...
big = generate(GenSpec(1000, 1000, lo=2.0, hi=5.0, seed=1))
print("min", big.min(), "max", big.max())

# ...and the sample mean sits at the uniform expectation (3.5) for large N.
print("mean of a million uniforms:", big.mean())

# The FLOPS denominator uses the exact operation count of the classic
# algorithm: n^2 dot products, each costing n multiplies and n - 1 adds.
for n in (1, 2, 64, 1000, 10_000):
    print(f"flop_count({n:>6}) = {flop_count(n):,}")

# Python integers keep this exact far beyond any benchmarkable size.
print(f"flop_count(100000) = {flop_count(100_000):,}")
assert flop_count(100_000) == 2 * 100_000**3 - 100_000**2
