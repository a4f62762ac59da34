"""Rendering of analysis documents as tables.

The summary table groups rows by matrix size with bootstrap mean and CI
bounds per backend, plus omnibus / post-hoc annotations. Markdown output is a
plain pipe table; CSV output carries the same columns machine-readably.
"""

from __future__ import annotations

import csv
import io

__all__ = ["render_markdown", "render_csv", "render_text"]

SUMMARY_COLUMNS = ["n", "backend", "mean_flops", "ci_lo", "ci_hi"]


def _summary_rows(doc: dict) -> list[list[str]]:
    rows = []
    for group in sorted(doc["groups"], key=lambda g: (g["n"], -g["mean"])):
        rows.append(
            [
                str(group["n"]),
                group["backend"],
                f"{group['mean']:.6e}",
                f"{group['lo']:.6e}",
                f"{group['hi']:.6e}",
            ]
        )
    return rows


def render_markdown(doc: dict) -> str:
    """Pipe-table summary grouped by matrix size."""
    lines = ["| " + " | ".join(SUMMARY_COLUMNS) + " |"]
    lines.append("|" + "|".join(" --- " for _ in SUMMARY_COLUMNS) + "|")
    for row in _summary_rows(doc):
        lines.append("| " + " | ".join(row) + " |")
    lines.append("")
    ranking = doc["ranking"]
    lines.append(f"Ranking at n={ranking['n']} (best first): " + ", ".join(ranking["order"]))
    for entry in doc["anova"]:
        if entry.get("note"):
            lines.append(f"Omnibus at n={entry['n']}: skipped ({entry['note']})")
        else:
            verdict = "reject" if entry["reject"] else "retain"
            lines.append(
                f"Omnibus at n={entry['n']}: F*={entry['f_star']:.4f}, "
                f"df=({entry['df1']:.0f}, {entry['df2']:.2f}), p={entry['p_display']} -> {verdict}"
            )
    return "\n".join(lines) + "\n"


def render_csv(doc: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(SUMMARY_COLUMNS)
    writer.writerows(_summary_rows(doc))
    return buf.getvalue()


def render_text(doc: dict) -> str:
    """Fixed-width console summary with omnibus and post-hoc sections."""
    out = []
    widths = [6, 16, 14, 14, 14]
    header = ["n", "backend", "mean_flops", "ci_lo", "ci_hi"]
    out.append("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    for row in _summary_rows(doc):
        out.append("  ".join(v.ljust(w) for v, w in zip(row, widths)))
    out.append("")
    for entry in doc["anova"]:
        if entry.get("note"):
            out.append(f"n={entry['n']}: omnibus skipped ({entry['note']})")
        else:
            verdict = "reject equal means" if entry["reject"] else "no rejection"
            out.append(
                f"n={entry['n']}: Welch F*={entry['f_star']:.4f} "
                f"df=({entry['df1']:.0f}, {entry['df2']:.2f}) p={entry['p_display']} -> {verdict}"
            )
    for block in doc.get("posthoc", []):
        out.append(f"pairwise (Games-Howell) at n={block['n']}:")
        for pair in block["pairs"]:
            flag = "*" if pair["significant"] else " "
            out.append(
                f"  {flag} {pair['a']} vs {pair['b']}: diff={pair['mean_diff']:.6e} "
                f"q={pair['q']:.4f} df={pair['df']:.2f} p={pair['p_display']}"
            )
    ranking = doc["ranking"]
    out.append(f"ranking at n={ranking['n']} (best first): " + ", ".join(ranking["order"]))
    return "\n".join(out) + "\n"
