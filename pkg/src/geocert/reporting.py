"""Campaign report emission: delimited tables plus rendered figures.

Tables are the deterministic artifact: identical configuration and seed
produce byte-identical JSON or CSV. Figures are a visual companion written
next to each table; they carry the same data but no promises about bytes.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .campaigns import CampaignReport, DECLARED_BITS

FORMATS = ("json", "csv")

# stable column order per campaign kind
_COLUMNS = {
    "completeness": ("n", "seed", "verdict", "rejecting", "bits"),
    "fuzz": ("iteration", "strategy", "seed", "verdict"),
    "bits": ("n", "bits", "ceil_log2", "ratio", "budget", "verdict"),
}


def report_json(report: CampaignReport) -> str:
    payload = {
        "kind": report.kind,
        "scheme": report.scheme,
        "seed": report.seed,
        "summary": dict(report.summary),
        "rows": [dict(r) for r in report.rows],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def report_csv(report: CampaignReport) -> str:
    cols = _COLUMNS[report.kind]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for row in report.rows:
        writer.writerow([row.get(c, "") for c in cols])
    return buf.getvalue()


def render_figure(report: CampaignReport, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    if report.kind == "completeness":
        acc = [(r["n"], r["bits"]) for r in report.rows if r["verdict"] == "accept"]
        rej = [(r["n"], r["bits"]) for r in report.rows if r["verdict"] != "accept"]
        if acc:
            ax.scatter(*zip(*acc), s=14, label="accept")
        if rej:
            ax.scatter(*zip(*rej), s=26, marker="x", color="crimson", label="reject")
        ax.set_xlabel("n")
        ax.set_ylabel("certificate bits")
        ax.legend(loc="lower right")
    elif report.kind == "fuzz":
        counts = report.summary.get("strategy_counts", {})
        names = sorted(counts)
        ax.bar(names, [counts[s] for s in names], label="sampled")
        ax.bar(["accepts"], [report.summary.get("accepts", 0)], color="crimson")
        ax.set_ylabel("assignments")
        ax.tick_params(axis="x", rotation=30)
    else:
        ns = [r["n"] for r in report.rows]
        ax.plot(ns, [r["bits"] for r in report.rows], marker="o", label="measured")
        ax.plot(ns, [r["budget"] for r in report.rows], linestyle="--", label="budget")
        ax.set_xscale("log", base=2)
        ax.set_xlabel("n")
        ax.set_ylabel("max certificate bits")
        k, c = DECLARED_BITS[report.scheme]
        ax.set_title(f"budget {k}*ceil(log2 n) + {c}")
        ax.legend(loc="upper left")
    fig.suptitle(f"{report.scheme}: {report.kind}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(report: CampaignReport, out_dir, fmt: str = "json") -> list[Path]:
    """Write the table and its figure into out_dir; return both paths."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; pick from {FORMATS}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"{report.kind}-{report.scheme}"
    if report.kind == "fuzz" and "fixture" in report.summary:
        stem = f"{report.kind}-{report.summary['fixture']}-{report.scheme}"
    table = out / f"{stem}.{fmt}"
    text = report_json(report) if fmt == "json" else report_csv(report)
    table.write_text(text)
    figure = out / f"{stem}.png"
    render_figure(report, figure)
    return [table, figure]
