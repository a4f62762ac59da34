"""Percentile-bootstrap confidence intervals for a sample mean.

Thirty trials per (backend, size) pair is a small sample, so instead of a
normal-theory interval the pipeline resamples with replacement and reads the
2.5 / 97.5 percentiles straight off the resampled means.
"""

import numpy as np

from tilebench import Sample, bootstrap_ci

rng = np.random.default_rng(7)

# Thirty noisy throughput measurements around 4.2 GFLOPS.
measurements = rng.normal(4.2e9, 2.5e8, size=30)
sample = Sample(measurements, label="tiled-pool")

summary = bootstrap_ci(sample, resamples=10_000, seed=1, level=0.95)
print(f"mean of resample means: {summary.mean:.4e}")
print(f"95% CI: [{summary.lo:.4e}, {summary.hi:.4e}]")

# Deterministic in the seed: rerunning gives the same interval bit for bit.
assert bootstrap_ci(sample, resamples=10_000, seed=1, level=0.95) == summary

# A constant sample collapses the interval to a point...
flat = bootstrap_ci(Sample([5.0, 5.0, 5.0, 5.0]), resamples=1000, seed=0)
print("constant sample:", flat.mean, flat.lo, flat.hi)

# ...and the mean of resample means converges on the sample mean (for
# [1, 2, 3] the exhaustive average over all 27 resamples is exactly 2).
tiny = bootstrap_ci(Sample([1.0, 2.0, 3.0]), resamples=200_000, seed=3)
print("n=3 mean of means:", tiny.mean)

# Wider confidence level, wider interval.
for level in (0.80, 0.95, 0.99):
    s = bootstrap_ci(sample, resamples=10_000, seed=1, level=level)
    print(f"level {level:.2f}: width {s.hi - s.lo:.4e}")
