import numpy as np
import pytest

from tilebench.analysis import (
    analyze_records,
    plot_rows,
    report_from_json,
    report_to_json,
    to_json_dict,
)
from tilebench.errors import InsufficientDataError, RecordsParseError
from tilebench.harness import TrialRecord
from tilebench.matrices import flop_count


def synthetic_records(backends_flops, sizes=(64,), trials=10, spread=0.01, seed=0):
    """Records whose FLOPS are normal around per-backend targets."""
    rng = np.random.default_rng(seed)
    records = []
    for n in sizes:
        count = flop_count(n)
        for backend, target in backends_flops.items():
            for trial in range(trials):
                flops = float(rng.normal(target, target * spread))
                seconds = count / flops
                records.append(
                    TrialRecord(backend=backend, n=n, trial=trial, seconds=seconds, flops=count / seconds)
                )
    return records


class TestAnalyzeRecords:
    def test_groups_and_counts(self):
        records = synthetic_records({"a": 1e9, "b": 2e9}, sizes=(32, 64), trials=5)
        report = analyze_records(records, resamples=500)
        assert report.sizes == [32, 64]
        assert report.backends == ["a", "b"]
        assert len(report.groups) == 4
        assert all(g.trials == 5 for g in report.groups)

    def test_single_group_skips_omnibus(self):
        records = synthetic_records({"solo": 1e9})
        report = analyze_records(records, resamples=500)
        assert report.anova[0].note == "single group"
        assert report.anova[0].result is None
        assert report.posthoc == []

    def test_separated_groups_rank_and_flag_all_pairs(self):
        targets = {"g1": 1e7, "g2": 1e8, "g3": 1e9, "g4": 1e10, "g5": 1e11}
        records = synthetic_records(targets, trials=30, seed=3)
        report = analyze_records(records, resamples=2000)
        assert report.ranking == ["g5", "g4", "g3", "g2", "g1"]
        assert report.anova[0].reject
        (block,) = report.posthoc
        assert len(block.pairs) == 10
        assert all(pair.significant for pair in block.pairs)

    def test_posthoc_gated_on_omnibus(self):
        # Two backends drawn from the same distribution: omnibus should not
        # reject at alpha=0.01, so no pairwise section is produced.
        records = synthetic_records({"x": 1e9, "y": 1e9}, trials=20, seed=123)
        report = analyze_records(records, alpha=0.01, resamples=500)
        if not report.anova[0].reject:  # overwhelmingly the case
            assert report.posthoc == []

    def test_force_posthoc_overrides_gate(self):
        records = synthetic_records({"x": 1e9, "y": 1e9}, trials=20, seed=123)
        report = analyze_records(records, alpha=0.01, resamples=500, force_posthoc=True)
        assert len(report.posthoc) == 1

    def test_ranking_uses_largest_size(self):
        rng_records = synthetic_records({"fast-small": 5e9, "fast-large": 1e9}, sizes=(16,), seed=5)
        rng_records += synthetic_records({"fast-small": 1e9, "fast-large": 5e9}, sizes=(128,), seed=6)
        report = analyze_records(rng_records, resamples=500)
        assert report.ranking_n == 128
        assert report.ranking[0] == "fast-large"

    def test_empty_records_rejected(self):
        with pytest.raises(InsufficientDataError):
            analyze_records([])


class TestDeterminism:
    def test_byte_identical_json(self):
        records = synthetic_records({"a": 1e9, "b": 3e9}, sizes=(32, 64), trials=8, seed=9)
        one = report_to_json(analyze_records(records, resamples=1000, seed=4))
        two = report_to_json(analyze_records(records, resamples=1000, seed=4))
        assert one == two

    def test_seed_changes_bootstrap(self):
        records = synthetic_records({"a": 1e9, "b": 3e9}, trials=8, seed=9)
        one = analyze_records(records, resamples=1000, seed=1)
        two = analyze_records(records, resamples=1000, seed=2)
        assert one.groups[0].summary != two.groups[0].summary


class TestPlotRows:
    def test_one_row_per_group_ordered(self):
        records = synthetic_records({"a": 1e9, "b": 2e9}, sizes=(32, 64, 128), trials=5)
        report = analyze_records(records, resamples=500)
        rows = plot_rows(report)
        assert len(rows) == 6
        assert [(r[0], r[1]) for r in rows] == [
            (32, "a"), (32, "b"), (64, "a"), (64, "b"), (128, "a"), (128, "b"),
        ]
        for _, _, mean, lo, hi in rows:
            assert lo <= mean <= hi


class TestJsonDocument:
    def test_round_trip_through_schema_check(self):
        records = synthetic_records({"a": 1e9, "b": 2e9}, trials=6)
        report = analyze_records(records, resamples=500)
        doc = report_from_json(report_to_json(report))
        assert doc == to_json_dict(report)

    def test_p_display_clamps_tiny_p(self):
        targets = {"g1": 1e7, "g2": 1e8, "g3": 1e9, "g4": 1e10, "g5": 1e11}
        records = synthetic_records(targets, trials=30, seed=3)
        doc = to_json_dict(analyze_records(records, resamples=500))
        displays = [pair["p_display"] for pair in doc["posthoc"][0]["pairs"]]
        assert all(d == "< 1e-12" or float(d.lstrip("< ")) >= 1e-12 for d in displays)
        assert "< 1e-12" in displays  # separations this extreme must clamp

    def test_rejects_wrong_schema(self):
        with pytest.raises(RecordsParseError):
            report_from_json('{"schema": "something-else"}')

    def test_rejects_non_json(self):
        with pytest.raises(RecordsParseError):
            report_from_json("not json at all")
