import csv
import json

import pytest

from tilebench.cli import main
from tilebench.records import read_records


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestRun:
    def test_writes_expected_record_count(self, tmp_path, capsys):
        out = tmp_path / "r.csv"
        code, _, err = run_cli(
            capsys, "run", "--backends", "naive,tiled-seq", "--sizes", "64",
            "--trials", "3", "--out", str(out),
        )
        assert code == 0
        records, metadata = read_records(out)
        assert len(records) == 6
        assert metadata is not None
        assert "[run]" in err  # progress goes to stderr

    def test_unknown_backend_is_usage_error(self, tmp_path, capsys):
        code, _, err = run_cli(
            capsys, "run", "--backends", "nosuch", "--sizes", "8",
            "--trials", "1", "--out", str(tmp_path / "r.csv"),
        )
        assert code == 2
        assert "nosuch" in err

    def test_protocol_shape_thirty_trials(self, tmp_path, capsys):
        out = tmp_path / "r.csv"
        code, _, _ = run_cli(
            capsys, "run", "--backends", "naive", "--sizes", "8",
            "--trials", "30", "--out", str(out),
        )
        assert code == 0
        records, _ = read_records(out)
        assert len(records) == 30

    def test_bad_flag_usage_exit(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["run", "--backends", "naive", "--sizes", "not-a-number",
                  "--out", str(tmp_path / "r.csv")])
        assert exc.value.code == 2

    def test_trial_failure_marks_partial_file(self, tmp_path, capsys):
        from tilebench.backends import BackendDescriptor, default_registry

        registry = default_registry()
        state = {"calls": 0}

        def flaky(a, b):
            state["calls"] += 1
            if state["calls"] > 1:
                raise RuntimeError("mid-run failure")
            return a @ b

        registry.register_external(BackendDescriptor("cli-flaky", requires_external=True), flaky)
        try:
            out = tmp_path / "r.csv"
            code, _, err = run_cli(
                capsys, "run", "--backends", "cli-flaky", "--sizes", "8",
                "--trials", "3", "--warmup", "0", "--out", str(out),
            )
            assert code == 1
            assert "cli-flaky" in err
            text = out.read_text()
            assert "# aborted:" in text
            records, _ = read_records(out)
            assert len(records) == 1  # the one good trial was flushed
        finally:
            registry.unregister("cli-flaky")


class TestAnalyze:
    @pytest.fixture()
    def records_file(self, tmp_path, capsys):
        out = tmp_path / "r.csv"
        code, _, _ = run_cli(
            capsys, "run", "--backends", "naive,tiled-seq,tiled-pool", "--sizes", "16,32",
            "--trials", "5", "--seed", "3", "--out", str(out),
        )
        assert code == 0
        return out

    def test_table_output(self, records_file, capsys):
        code, out, _ = run_cli(capsys, "analyze", "--in", str(records_file), "--bootstrap", "500")
        assert code == 0
        assert "ranking at n=32" in out

    def test_json_output_and_artifact(self, records_file, tmp_path, capsys):
        artifact = tmp_path / "analysis.json"
        code, out, _ = run_cli(
            capsys, "analyze", "--in", str(records_file), "--bootstrap", "500",
            "--format", "json", "--out", str(artifact),
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == "tilebench-analysis-v1"
        assert artifact.read_text() == out

    def test_plot_data_grid(self, records_file, tmp_path, capsys):
        plot = tmp_path / "plot.csv"
        code, _, _ = run_cli(
            capsys, "analyze", "--in", str(records_file), "--bootstrap", "500",
            "--plot-data", str(plot),
        )
        assert code == 0
        rows = list(csv.DictReader(plot.open()))
        assert len(rows) == 6  # 3 backends x 2 sizes
        for row in rows:
            assert float(row["lo"]) <= float(row["mean"]) <= float(row["hi"])

    def test_byte_identical_reruns(self, records_file, tmp_path, capsys):
        outs = []
        for name in ("a1.json", "a2.json"):
            artifact = tmp_path / name
            code, _, _ = run_cli(
                capsys, "analyze", "--in", str(records_file), "--bootstrap", "500",
                "--seed", "11", "--out", str(artifact),
            )
            assert code == 0
            outs.append(artifact.read_bytes())
        assert outs[0] == outs[1]

    def test_unreadable_input_fails_with_diagnostics(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("backend,n,trial,seconds\nnaive,8,0,0.5\n")
        code, _, err = run_cli(capsys, "analyze", "--in", str(bad))
        assert code == 1
        assert "flops" in err

    def test_missing_file(self, tmp_path, capsys):
        code, _, err = run_cli(capsys, "analyze", "--in", str(tmp_path / "nope.csv"))
        assert code == 1
        assert "nope.csv" in err


class TestPipelineRoundTrip:
    def test_two_backend_round_trip_under_a_minute(self, tmp_path, capsys):
        import time

        started = time.perf_counter()
        records = tmp_path / "r.csv"
        analysis = tmp_path / "analysis.json"
        assert run_cli(
            capsys, "run", "--backends", "naive,tiled-seq", "--sizes", "32,64",
            "--trials", "5", "--out", str(records),
        )[0] == 0
        assert run_cli(
            capsys, "analyze", "--in", str(records), "--bootstrap", "2000",
            "--out", str(analysis),
        )[0] == 0
        code, out, _ = run_cli(capsys, "report", "--in", str(analysis), "--format", "md")
        assert code == 0
        assert out.count("\n") >= 6  # header + separator + 4 data rows + ranking
        assert time.perf_counter() - started < 60.0


class TestReport:
    @pytest.fixture()
    def analysis_file(self, tmp_path, capsys):
        records = tmp_path / "r.csv"
        run_cli(
            capsys, "run", "--backends", "naive,tiled-seq", "--sizes", "16,32",
            "--trials", "5", "--out", str(records),
        )
        artifact = tmp_path / "analysis.json"
        run_cli(
            capsys, "analyze", "--in", str(records), "--bootstrap", "500",
            "--out", str(artifact),
        )
        return artifact

    def test_markdown_table_shape(self, analysis_file, capsys):
        code, out, _ = run_cli(capsys, "report", "--in", str(analysis_file))
        assert code == 0
        lines = [l for l in out.splitlines() if l.startswith("|")]
        assert len(lines) == 2 + 4  # header + separator + 2 backends x 2 sizes
        header_cells = [c.strip() for c in lines[0].strip("|").split("|")]
        assert header_cells == ["n", "backend", "mean_flops", "ci_lo", "ci_hi"]
        for line in lines[2:]:
            assert len(line.strip("|").split("|")) == 5

    def test_csv_format(self, analysis_file, capsys):
        code, out, _ = run_cli(capsys, "report", "--in", str(analysis_file), "--format", "csv")
        assert code == 0
        rows = list(csv.reader(out.splitlines()))
        assert rows[0] == ["n", "backend", "mean_flops", "ci_lo", "ci_hi"]
        assert len(rows) == 5

    def test_empty_analysis_file(self, tmp_path, capsys):
        empty = tmp_path / "empty.json"
        empty.write_text("")
        code, _, err = run_cli(capsys, "report", "--in", str(empty))
        assert code == 1

    def test_schema_mismatch(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"schema": "other"}')
        code, _, _ = run_cli(capsys, "report", "--in", str(bad))
        assert code == 1
