"""Command line entry points: ``run``, ``analyze``, ``report``.

``run`` executes the trial protocol and streams records to a CSV file (data
never goes to stdout; progress goes to stderr). ``analyze`` turns a records
file into the statistical report. ``report`` renders a saved analysis
document as a markdown or CSV summary table.

Exit codes: 0 success, 1 runtime/data failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .analysis import analyze_records, plot_rows, report_from_json, report_to_json, to_json_dict
from .backends import PoolConfig, TileConfig, default_registry
from .errors import (
    InvalidConfigError,
    RecordsParseError,
    RecordValidationError,
    TilebenchError,
    TrialError,
    UnknownBackendError,
)
from .harness import RunConfig, RunMetadata, run_trials
from .records import CSV_HEADER, record_row, write_metadata
from .report import render_csv, render_markdown, render_text

__all__ = ["main"]


def _csv_names(text: str) -> tuple[str, ...]:
    names = tuple(name.strip() for name in text.split(",") if name.strip())
    if not names:
        raise argparse.ArgumentTypeError("expected a comma-separated list of names")
    return names


def _csv_ints(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _threads(text: str) -> int | None:
    if text == "auto":
        return None
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'auto', got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tilebench", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute benchmark trials and write a records CSV")
    run.add_argument("--backends", type=_csv_names, required=True, help="comma-separated backend names")
    run.add_argument("--sizes", type=_csv_ints, required=True, help="comma-separated matrix sizes")
    run.add_argument("--trials", type=int, default=30)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--tile", type=int, default=32)
    run.add_argument("--threads", type=_threads, default=None, help="worker count or 'auto'")
    run.add_argument("--warmup", type=int, default=1)
    run.add_argument("--verify", action="store_true", help="check results against the oracle after timing")
    run.add_argument("--out", required=True, help="records CSV path")
    run.set_defaults(fn=cmd_run)

    analyze = sub.add_parser("analyze", help="bootstrap + omnibus + post-hoc over a records CSV")
    analyze.add_argument("--in", dest="input_path", required=True, help="records CSV path")
    analyze.add_argument("--alpha", type=float, default=0.01)
    analyze.add_argument("--bootstrap", type=int, default=10_000)
    analyze.add_argument("--level", type=float, default=0.95)
    analyze.add_argument("--seed", type=int, default=0)
    analyze.add_argument("--format", choices=["table", "json", "csv"], default="table")
    analyze.add_argument("--plot-data", help="write (n, backend, mean, lo, hi) CSV here")
    analyze.add_argument("--out", help="write the analysis JSON document here")
    analyze.add_argument("--force-posthoc", action="store_true", help="run pairwise tests even without omnibus rejection")
    analyze.set_defaults(fn=cmd_analyze)

    report = sub.add_parser("report", help="render a saved analysis document")
    report.add_argument("--in", dest="input_path", required=True, help="analysis JSON path")
    report.add_argument("--format", choices=["md", "csv"], default="md")
    report.set_defaults(fn=cmd_report)
    return parser


def cmd_run(args) -> int:
    registry = default_registry()
    config = RunConfig(
        backends=args.backends,
        sizes=args.sizes,
        trials=args.trials,
        warmup=args.warmup,
        seed=args.seed,
        tile=TileConfig(args.tile),
        threads=PoolConfig(args.threads) if args.threads is not None else PoolConfig(),
        verify=args.verify,
    )
    try:
        config.validate(registry)
    except UnknownBackendError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except InvalidConfigError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2

    out_path = Path(args.out)
    with out_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)

        def on_record(record):
            writer.writerow(record_row(record))
            fh.flush()

        def progress(name, n, trial, trials):
            print(f"[run] {name} n={n} trial {trial + 1}/{trials}", file=sys.stderr)

        try:
            _, metadata = run_trials(config, registry, progress=progress, on_record=on_record)
        except TrialError as exc:
            fh.write(f"# aborted: {exc}\n")
            write_metadata(out_path, RunMetadata.capture(config), aborted=str(exc))
            print(f"error: {exc}", file=sys.stderr)
            return 1
    write_metadata(out_path, metadata)
    print(f"[run] wrote {out_path}", file=sys.stderr)
    return 0


def cmd_analyze(args) -> int:
    try:
        from .records import read_records

        records, _ = read_records(args.input_path)
        report = analyze_records(
            records,
            alpha=args.alpha,
            resamples=args.bootstrap,
            level=args.level,
            seed=args.seed,
            force_posthoc=args.force_posthoc,
        )
    except (OSError, TilebenchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    doc = to_json_dict(report)
    if args.plot_data:
        with Path(args.plot_data).open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "backend", "mean", "lo", "hi"])
            for n, backend, mean, lo, hi in plot_rows(report):
                writer.writerow([n, backend, format(mean, ".17g"), format(lo, ".17g"), format(hi, ".17g")])
    if args.out:
        Path(args.out).write_text(report_to_json(report))
    if args.format == "json":
        sys.stdout.write(report_to_json(report))
    elif args.format == "csv":
        sys.stdout.write(render_csv(doc))
    else:
        sys.stdout.write(render_text(doc))
    return 0


def cmd_report(args) -> int:
    try:
        text = Path(args.input_path).read_text()
        doc = report_from_json(text)
    except (OSError, RecordsParseError, RecordValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "md":
        sys.stdout.write(render_markdown(doc))
    else:
        sys.stdout.write(render_csv(doc))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
