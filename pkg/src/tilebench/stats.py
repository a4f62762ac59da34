"""Statistics over benchmark samples.

Covers the whole chain used to rank backends: percentile-bootstrap confidence
intervals per group, the Welch heteroscedastic ANOVA omnibus, and the
Games-Howell pairwise post-hoc built on the studentized range distribution.

All functions are pure; bootstrap resampling is deterministic in its seed
(PCG64). Group inputs may be :class:`Sample` instances or plain sequences;
plain sequences get positional labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateVarianceError,
    InsufficientDataError,
    InsufficientGroupsError,
    InvalidRangeError,
)
from .special import f_cdf, studentized_range_sf

__all__ = [
    "Sample",
    "BootstrapSummary",
    "AnovaResult",
    "PairwiseResult",
    "sample_mean",
    "sample_std",
    "percentile",
    "bootstrap_ci",
    "welch_anova",
    "games_howell",
    "format_p",
]

P_FLOOR = 1e-12


@dataclass(frozen=True)
class Sample:
    """One group's measurements (e.g. the 30 FLOPS values of a backend)."""

    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size == 0:
            raise InsufficientDataError("sample must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(values)):
            raise InvalidRangeError(f"sample {self.label!r} contains non-finite values")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class BootstrapSummary:
    """Mean of resample means with percentile confidence bounds."""

    mean: float
    lo: float
    hi: float
    resamples: int
    level: float


@dataclass(frozen=True)
class AnovaResult:
    """Welch omnibus statistic with its two degrees of freedom and p-value."""

    f_star: float
    df1: float
    df2: float
    p: float


@dataclass(frozen=True)
class PairwiseResult:
    """Games-Howell comparison of two groups."""

    a: str
    b: str
    mean_diff: float
    q: float
    df: float
    p: float
    significant: bool


def _as_sample(group, index: int) -> Sample:
    if isinstance(group, Sample):
        return group
    return Sample(np.asarray(group, dtype=np.float64), f"group{index}")


def _as_samples(groups: Iterable) -> list[Sample]:
    return [_as_sample(g, i) for i, g in enumerate(groups)]


def _values(s) -> np.ndarray:
    return s.values if isinstance(s, Sample) else Sample(np.asarray(s, dtype=np.float64)).values


def sample_mean(s) -> float:
    """Arithmetic mean."""
    return float(np.mean(_values(s)))


def sample_std(s) -> float:
    """Sample standard deviation with the unbiased n - 1 denominator."""
    values = _values(s)
    if values.size < 2:
        raise InsufficientDataError("standard deviation needs at least 2 values")
    return float(np.std(values, ddof=1))


def percentile(sorted_values: Sequence[float], p: float) -> float:
    """Percentile by linear interpolation between closest ranks.

    The rank is ``(n - 1) * p / 100``; values must already be sorted
    ascending. This is the one percentile definition used everywhere in the
    package (bootstrap bounds included) so results do not drift between
    ecosystems with different defaults.
    """
    values = np.asarray(sorted_values, dtype=np.float64)
    if values.size == 0:
        raise InsufficientDataError("percentile of an empty sequence")
    if not 0.0 <= p <= 100.0:
        raise InvalidRangeError(f"percentile must be in [0, 100], got {p}")
    rank = (values.size - 1) * (p / 100.0)
    lo = int(np.floor(rank))
    hi = int(np.ceil(rank))
    if lo == hi:
        return float(values[lo])
    frac = rank - lo
    return float(values[lo] * (1.0 - frac) + values[hi] * frac)


def bootstrap_ci(s, resamples: int = 10_000, seed: int = 0, level: float = 0.95) -> BootstrapSummary:
    """Percentile-bootstrap summary of a sample mean.

    Draws ``resamples`` with-replacement samples of the original size,
    takes each mean, and reports the mean of those means with the
    ``(1 - level)/2`` and ``(1 + level)/2`` percentile bounds.
    """
    values = _values(s)
    if values.size < 2:
        raise InsufficientDataError("bootstrap needs at least 2 values")
    if resamples < 100:
        raise InvalidRangeError(f"resamples must be >= 100, got {resamples}")
    if not 0.0 < level < 1.0:
        raise InvalidRangeError(f"confidence level must be in (0, 1), got {level}")
    rng = np.random.Generator(np.random.PCG64(seed))
    idx = rng.integers(0, values.size, size=(resamples, values.size))
    means = np.sort(values[idx].mean(axis=1))
    tail = 100.0 * (1.0 - level) / 2.0
    return BootstrapSummary(
        mean=float(means.mean()),
        lo=percentile(means, tail),
        hi=percentile(means, 100.0 - tail),
        resamples=resamples,
        level=level,
    )


def _group_moments(groups: list[Sample]):
    if len(groups) < 2:
        raise InsufficientGroupsError(f"need at least 2 groups, got {len(groups)}")
    n = np.array([len(g) for g in groups], dtype=np.float64)
    if np.any(n < 2):
        raise InsufficientDataError("every group needs at least 2 values")
    means = np.array([np.mean(g.values) for g in groups])
    variances = np.array([np.var(g.values, ddof=1) for g in groups])
    if np.any(variances <= 0.0):
        bad = groups[int(np.argmin(variances))].label
        raise DegenerateVarianceError(
            f"group {bad!r} has zero variance; its weight would be infinite"
        )
    return n, means, variances


def welch_anova(groups: Iterable) -> AnovaResult:
    """Welch's heteroscedastic one-way ANOVA.

    Weights each group by n/s^2 so unequal variances need no pooling:
    F* = [sum_i w_i (m_i - m_w)^2 / (k-1)] / [1 + (2(k-2)/(k^2-1)) L] with
    L = sum_i (1 - w_i/W)^2 / (n_i - 1), df1 = k - 1, df2 = (k^2-1)/(3L).
    """
    samples = _as_samples(groups)
    n, means, variances = _group_moments(samples)
    k = len(samples)
    w = n / variances
    w_total = w.sum()
    grand = float(np.dot(w, means) / w_total)
    lam = float(np.sum((1.0 - w / w_total) ** 2 / (n - 1.0)))
    numer = float(np.dot(w, (means - grand) ** 2)) / (k - 1.0)
    f_star = numer / (1.0 + 2.0 * (k - 2.0) / (k**2 - 1.0) * lam)
    df1 = float(k - 1)
    df2 = (k**2 - 1.0) / (3.0 * lam)
    p = 1.0 - f_cdf(f_star, df1, df2)
    return AnovaResult(f_star=float(f_star), df1=df1, df2=float(df2), p=float(p))


def games_howell(groups: Iterable, alpha: float = 0.01) -> list[PairwiseResult]:
    """Games-Howell pairwise comparisons over all unordered group pairs.

    Per pair: the Welch standard error and Welch-Satterthwaite degrees of
    freedom, with q = |m_a - m_b| / se * sqrt(2) referred to the studentized
    range distribution across all k groups.
    """
    samples = _as_samples(groups)
    if not 0.0 < alpha < 1.0:
        raise InvalidRangeError(f"alpha must be in (0, 1), got {alpha}")
    n, means, variances = _group_moments(samples)
    k = len(samples)
    results = []
    for i, j in combinations(range(k), 2):
        vn_i = variances[i] / n[i]
        vn_j = variances[j] / n[j]
        se = float(np.sqrt(vn_i + vn_j))
        df = float((vn_i + vn_j) ** 2 / (vn_i**2 / (n[i] - 1.0) + vn_j**2 / (n[j] - 1.0)))
        mean_diff = float(means[i] - means[j])
        q = float(abs(mean_diff) / se * np.sqrt(2.0))
        p = studentized_range_sf(q, k, df)
        results.append(
            PairwiseResult(
                a=samples[i].label,
                b=samples[j].label,
                mean_diff=mean_diff,
                q=q,
                df=df,
                p=float(p),
                significant=bool(p < alpha),
            )
        )
    return results


def format_p(p: float, floor: float = P_FLOOR) -> str:
    """Render a p-value, clamping anything below the reporting floor."""
    if p < floor:
        return f"< {floor:.0e}"
    return f"{p:.3e}"
