"""Turns raw trial records into the ranked statistical report.

Per (backend, size) group: a percentile-bootstrap CI of mean FLOPS. Per size:
the Welch omnibus across backends, then Games-Howell pairwise tests only where
the omnibus rejected at alpha (mirroring the reject-then-posthoc order; a
``force_posthoc`` switch overrides for exploration). Backends are ranked by
bootstrap mean at the largest size.

Given identical records and parameters the report is byte-identical:
bootstrap seeds derive from (seed, backend, n) and the JSON encoding is
canonical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import InsufficientDataError, RecordsParseError
from .harness import TrialRecord, derive_seed
from .stats import (
    AnovaResult,
    BootstrapSummary,
    PairwiseResult,
    Sample,
    bootstrap_ci,
    format_p,
    games_howell,
    welch_anova,
)

__all__ = [
    "GroupSummary",
    "SizeAnova",
    "SizePosthoc",
    "AnalysisReport",
    "analyze_records",
    "report_to_json",
    "report_from_json",
    "plot_rows",
]

SCHEMA = "tilebench-analysis-v1"
BOOTSTRAP_STREAM = 2  # harness streams: 0 measured, 1 warmup


@dataclass(frozen=True)
class GroupSummary:
    backend: str
    n: int
    trials: int
    summary: BootstrapSummary


@dataclass(frozen=True)
class SizeAnova:
    n: int
    groups: int
    result: AnovaResult | None
    reject: bool
    note: str | None = None


@dataclass(frozen=True)
class SizePosthoc:
    n: int
    pairs: list[PairwiseResult]


@dataclass(frozen=True)
class AnalysisReport:
    alpha: float
    level: float
    resamples: int
    seed: int
    backends: list[str]
    sizes: list[int]
    groups: list[GroupSummary]
    anova: list[SizeAnova]
    posthoc: list[SizePosthoc]
    ranking_n: int
    ranking: list[str]


def _grouped(records: Sequence[TrialRecord]) -> dict[int, dict[str, list[float]]]:
    by_size: dict[int, dict[str, list[float]]] = {}
    for record in records:
        by_size.setdefault(record.n, {}).setdefault(record.backend, []).append(record.flops)
    return by_size


def analyze_records(
    records: Sequence[TrialRecord],
    alpha: float = 0.01,
    resamples: int = 10_000,
    level: float = 0.95,
    seed: int = 0,
    force_posthoc: bool = False,
) -> AnalysisReport:
    """Run the full bootstrap / omnibus / post-hoc pipeline over records."""
    if not records:
        raise InsufficientDataError("no records to analyze")
    by_size = _grouped(records)
    sizes = sorted(by_size)
    backends = sorted({record.backend for record in records})

    groups: list[GroupSummary] = []
    anova: list[SizeAnova] = []
    posthoc: list[SizePosthoc] = []
    means: dict[tuple[int, str], float] = {}
    for n in sizes:
        per_backend = by_size[n]
        for name in sorted(per_backend):
            values = per_backend[name]
            summary = bootstrap_ci(
                Sample(values, name),
                resamples=resamples,
                seed=derive_seed(seed, name, n, BOOTSTRAP_STREAM, 0, 0),
                level=level,
            )
            groups.append(GroupSummary(backend=name, n=n, trials=len(values), summary=summary))
            means[(n, name)] = summary.mean

        samples = [Sample(per_backend[name], name) for name in sorted(per_backend)]
        if len(samples) < 2:
            anova.append(SizeAnova(n=n, groups=1, result=None, reject=False, note="single group"))
            continue
        result = welch_anova(samples)
        reject = result.p < alpha
        anova.append(SizeAnova(n=n, groups=len(samples), result=result, reject=reject))
        if reject or force_posthoc:
            posthoc.append(SizePosthoc(n=n, pairs=games_howell(samples, alpha=alpha)))

    ranking_n = sizes[-1]
    ranking = sorted(
        by_size[ranking_n], key=lambda name: means[(ranking_n, name)], reverse=True
    )
    return AnalysisReport(
        alpha=alpha,
        level=level,
        resamples=resamples,
        seed=seed,
        backends=backends,
        sizes=sizes,
        groups=groups,
        anova=anova,
        posthoc=posthoc,
        ranking_n=ranking_n,
        ranking=ranking,
    )


def plot_rows(report: AnalysisReport) -> list[tuple[int, str, float, float, float]]:
    """(n, backend, mean, lo, hi) rows for log-log plotting, one per group."""
    return [
        (g.n, g.backend, g.summary.mean, g.summary.lo, g.summary.hi) for g in report.groups
    ]


def to_json_dict(report: AnalysisReport) -> dict:
    return {
        "schema": SCHEMA,
        "params": {
            "alpha": report.alpha,
            "level": report.level,
            "resamples": report.resamples,
            "seed": report.seed,
        },
        "backends": report.backends,
        "sizes": report.sizes,
        "groups": [
            {
                "backend": g.backend,
                "n": g.n,
                "trials": g.trials,
                "mean": g.summary.mean,
                "lo": g.summary.lo,
                "hi": g.summary.hi,
            }
            for g in report.groups
        ],
        "anova": [
            {
                "n": a.n,
                "groups": a.groups,
                "f_star": None if a.result is None else a.result.f_star,
                "df1": None if a.result is None else a.result.df1,
                "df2": None if a.result is None else a.result.df2,
                "p": None if a.result is None else a.result.p,
                "p_display": None if a.result is None else format_p(a.result.p),
                "reject": a.reject,
                "note": a.note,
            }
            for a in report.anova
        ],
        "posthoc": [
            {
                "n": ph.n,
                "pairs": [
                    {
                        "a": pair.a,
                        "b": pair.b,
                        "mean_diff": pair.mean_diff,
                        "q": pair.q,
                        "df": pair.df,
                        "p": pair.p,
                        "p_display": format_p(pair.p),
                        "significant": pair.significant,
                    }
                    for pair in ph.pairs
                ],
            }
            for ph in report.posthoc
        ],
        "ranking": {"n": report.ranking_n, "order": report.ranking},
    }


def report_to_json(report: AnalysisReport) -> str:
    """Canonical JSON: same report in, same bytes out."""
    return json.dumps(to_json_dict(report), indent=2, sort_keys=True) + "\n"


def report_from_json(text: str) -> dict:
    """Parse and schema-check an analysis document (as the report command sees it)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RecordsParseError(f"invalid analysis JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise RecordsParseError(
            f"not a {SCHEMA} document (schema={doc.get('schema') if isinstance(doc, dict) else None!r})"
        )
    for key in ("params", "groups", "anova", "ranking"):
        if key not in doc:
            raise RecordsParseError(f"analysis document missing key {key!r}")
    return doc
