"""Persistence of trial records.

Records go to CSV with the exact header ``backend,n,trial,seconds,flops``;
floats are written with 17 significant digits so the round trip is lossless.
Run metadata goes to a JSON sidecar at ``<path>.meta.json`` with keys
``timestamp``, ``host``, ``cores``, ``config``.

Lines starting with ``#`` are comments; an aborted run is marked by a trailing
``# aborted: ...`` line plus an ``aborted`` key in the sidecar.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable

from .errors import RecordsParseError, RecordValidationError
from .harness import RunMetadata, TrialRecord

__all__ = ["CSV_HEADER", "write_records", "read_records", "metadata_path"]

CSV_HEADER = ["backend", "n", "trial", "seconds", "flops"]


def metadata_path(path: str | Path) -> Path:
    return Path(str(path) + ".meta.json")


def _fmt(x: float) -> str:
    return format(x, ".17g")


def record_row(record: TrialRecord) -> list[str]:
    return [record.backend, str(record.n), str(record.trial), _fmt(record.seconds), _fmt(record.flops)]


def write_records(
    path: str | Path,
    records: Iterable[TrialRecord],
    metadata: RunMetadata,
    aborted: str | None = None,
) -> None:
    """Write records and the metadata sidecar; marks the file when aborted."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for record in records:
            writer.writerow(record_row(record))
        if aborted is not None:
            fh.write(f"# aborted: {aborted}\n")
    write_metadata(path, metadata, aborted)


def write_metadata(path: str | Path, metadata: RunMetadata, aborted: str | None = None) -> None:
    doc = {
        "timestamp": metadata.timestamp,
        "host": metadata.host,
        "cores": metadata.cores,
        "config": metadata.config,
    }
    if aborted is not None:
        doc["aborted"] = aborted
    metadata_path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _parse_field(row: dict, column: str, line: int) -> str:
    value = row.get(column)
    if value is None or value == "":
        raise RecordsParseError(f"missing column {column!r}", line)
    return value


def read_records(path: str | Path) -> tuple[list[TrialRecord], RunMetadata | None]:
    """Read records and (if present) the metadata sidecar.

    Raises :class:`RecordsParseError` with the offending line number on
    malformed input and :class:`RecordValidationError` when a row is readable
    but violates a record invariant.
    """
    path = Path(path)
    records: list[TrialRecord] = []
    with path.open(newline="") as fh:
        header_line = fh.readline()
        header = next(csv.reader([header_line])) if header_line.strip() else []
        missing = [c for c in CSV_HEADER if c not in header]
        if missing:
            raise RecordsParseError(f"missing column(s) {', '.join(missing)} in header", 1)
        for line_no, raw in enumerate(fh, start=2):
            if not raw.strip() or raw.lstrip().startswith("#"):
                continue
            row = dict(zip(header, next(csv.reader([raw]))))
            try:
                backend = _parse_field(row, "backend", line_no)
                n = int(_parse_field(row, "n", line_no))
                trial = int(_parse_field(row, "trial", line_no))
                seconds = float(_parse_field(row, "seconds", line_no))
                flops = float(_parse_field(row, "flops", line_no))
            except ValueError as exc:
                if isinstance(exc, RecordsParseError):
                    raise
                raise RecordsParseError(str(exc), line_no) from exc
            try:
                records.append(
                    TrialRecord(backend=backend, n=n, trial=trial, seconds=seconds, flops=flops)
                )
            except RecordValidationError as exc:
                raise RecordValidationError(f"line {line_no}: {exc}") from exc
    metadata = read_metadata(path)
    return records, metadata


def read_metadata(path: str | Path) -> RunMetadata | None:
    side = metadata_path(path)
    if not side.exists():
        return None
    try:
        doc = json.loads(side.read_text())
        return RunMetadata(
            timestamp=doc["timestamp"],
            host=doc["host"],
            cores=int(doc["cores"]),
            config=doc["config"],
        )
    except (KeyError, ValueError) as exc:
        raise RecordsParseError(f"invalid metadata sidecar {side}: {exc}") from exc
