import pytest

from tilebench.errors import RecordsParseError, RecordValidationError
from tilebench.harness import RunConfig, RunMetadata, TrialRecord
from tilebench.matrices import flop_count
from tilebench.records import metadata_path, read_records, write_records


def make_records(count=6):
    out = []
    for i in range(count):
        seconds = 0.001 * (i + 1) / 3.0  # deliberately non-representable thirds
        out.append(
            TrialRecord(
                backend="naive" if i % 2 else "tiled-seq",
                n=8 * (1 + i % 3),
                trial=i,
                seconds=seconds,
                flops=flop_count(8 * (1 + i % 3)) / seconds,
            )
        )
    return out


def make_metadata():
    config = RunConfig(backends=("naive",), sizes=(8,), trials=3)
    return RunMetadata.capture(config)


class TestRoundTrip:
    def test_lossless(self, tmp_path):
        path = tmp_path / "records.csv"
        records = make_records(120)
        metadata = make_metadata()
        write_records(path, records, metadata)
        got, got_meta = read_records(path)
        assert got == records
        assert got_meta == metadata

    def test_header_exact(self, tmp_path):
        path = tmp_path / "records.csv"
        write_records(path, make_records(1), make_metadata())
        assert path.read_text().splitlines()[0] == "backend,n,trial,seconds,flops"

    def test_metadata_sidecar_keys(self, tmp_path):
        import json

        path = tmp_path / "records.csv"
        write_records(path, make_records(1), make_metadata())
        doc = json.loads(metadata_path(path).read_text())
        assert set(doc) == {"timestamp", "host", "cores", "config"}

    def test_aborted_run_marked_and_still_readable(self, tmp_path):
        import json

        path = tmp_path / "records.csv"
        write_records(path, make_records(2), make_metadata(), aborted="backend fell over")
        assert "# aborted: backend fell over" in path.read_text()
        assert json.loads(metadata_path(path).read_text())["aborted"] == "backend fell over"
        got, _ = read_records(path)
        assert len(got) == 2

    def test_missing_sidecar_gives_none(self, tmp_path):
        path = tmp_path / "records.csv"
        write_records(path, make_records(1), make_metadata())
        metadata_path(path).unlink()
        _, metadata = read_records(path)
        assert metadata is None


class TestParseErrors:
    def test_missing_column_named(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("backend,n,trial,seconds\nnaive,8,0,0.5\n")
        with pytest.raises(RecordsParseError, match="flops"):
            read_records(path)

    def test_short_row_names_column_and_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("backend,n,trial,seconds,flops\nnaive,8,0,0.5\n")
        with pytest.raises(RecordsParseError, match="line 2"):
            read_records(path)

    def test_non_numeric_field_has_line_number(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("backend,n,trial,seconds,flops\nnaive,8,zero,0.5,1968.0\n")
        with pytest.raises(RecordsParseError, match="line 2"):
            read_records(path)

    def test_zero_seconds_is_validation_error(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("backend,n,trial,seconds,flops\nnaive,8,0,0,984.0\n")
        with pytest.raises(RecordValidationError, match="seconds"):
            read_records(path)

    def test_inconsistent_flops_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("backend,n,trial,seconds,flops\nnaive,8,0,0.5,123.0\n")
        with pytest.raises(RecordValidationError, match="flops"):
            read_records(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(RecordsParseError):
            read_records(path)
