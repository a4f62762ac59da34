"""The formal ranking pipeline: Welch omnibus, then Games-Howell pairs.

Benchmark FLOPS groups are wildly heteroscedastic (a GPU library's standard
deviation can be thousands of times a thread pool's), which rules out
classic ANOVA + Tukey. Welch's ANOVA weights groups by n/s^2 and Games-Howell
gives each pair its own Welch-Satterthwaite degrees of freedom.
"""

import numpy as np

from tilebench import Sample, games_howell, welch_anova
from tilebench.stats import format_p

rng = np.random.default_rng(11)

# Five synthetic "backends" whose mean throughputs are orders of magnitude
# apart, with per-group noise proportional to the mean (like real FLOPS data).
groups = [
    Sample(rng.normal(mu, mu * 0.01, size=30), label)
    for label, mu in [
        ("vendor-gpu", 5e12),
        ("hand-gpu", 1e12),
        ("vendor-cpu", 3e11),
        ("collapsed-loops", 2e10),
        ("task-queue", 1.5e10),
    ]
]

# Step 1: the omnibus. Small p -> at least one mean differs.
omnibus = welch_anova(groups)
print(f"Welch F* = {omnibus.f_star:.1f}, df = ({omnibus.df1:.0f}, {omnibus.df2:.1f}), "
      f"p = {format_p(omnibus.p)}")

# Step 2: only after rejecting do we ask which pairs differ.
if omnibus.p < 0.01:
    print("\npairwise Games-Howell (alpha = 0.01):")
    for pair in games_howell(groups, alpha=0.01):
        flag = "*" if pair.significant else " "
        print(f" {flag} {pair.a:>15} vs {pair.b:<15} q={pair.q:9.2f} "
              f"df={pair.df:6.1f} p={format_p(pair.p)}")

# p-values below 1e-12 print as "< 1e-12": that deep in the tail the
# distributional model is the binding approximation, not the arithmetic.

# Ranking falls out of the group means once significance is established.
ranked = sorted(groups, key=lambda s: s.values.mean(), reverse=True)
print("\nranking (best first):", ", ".join(s.label for s in ranked))
