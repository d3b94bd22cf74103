"""Render scenario reports to JSON plus PNG charts."""

from __future__ import annotations

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def write_report(reports, path) -> list[Path]:
    """Write all reports as a JSON list to ``path`` and charts beside it.

    Returns the paths written."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps([r.to_dict() for r in reports], indent=2, default=str) + "\n")
    written = [path]
    stem = path.with_suffix("")
    written.append(checks_chart(reports, stem.with_name(stem.name + "_checks.png")))
    for r in reports:
        hist = r.artifacts.get("histogram")
        if hist is not None:
            out = stem.with_name(f"{stem.name}_{r.scenario}_seed{r.seed}_histogram.png")
            written.append(length_histogram(hist, out, title=f"{r.scenario} intersection lengths (seed {r.seed})"))
    return written


def checks_chart(reports, out) -> Path:
    """Stacked bars of passing and failing checks per report."""
    labels = [f"{r.scenario}/{r.seed}" for r in reports]
    ok = [sum(c.passed for c in r.checks) for r in reports]
    bad = [sum(not c.passed for c in r.checks) for r in reports]
    fig, ax = plt.subplots(figsize=(max(4, 0.6 * len(labels) + 2), 3.5))
    ax.bar(labels, ok, color="#4c9a5b", label="pass")
    ax.bar(labels, bad, bottom=ok, color="#c0504d", label="fail")
    ax.set_ylabel("checks")
    ax.legend(loc="upper right")
    ax.tick_params(axis="x", rotation=60)
    fig.tight_layout()
    fig.savefig(out, dpi=100)
    plt.close(fig)
    return Path(out)


def length_histogram(hist: dict, out, title: str = "intersection lengths", bound: int = 10) -> Path:
    xs = list(range(0, max([bound + 2] + [int(k) for k in hist]) + 1))
    ys = [hist.get(x, hist.get(str(x), 0)) for x in xs]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.bar(xs, ys, color=["#c0504d" if x > bound else "#4f81bd" for x in xs])
    ax.axvline(bound + 0.5, color="k", linestyle="--", linewidth=1)
    ax.set_xticks(xs)
    ax.set_xlabel("length")
    ax.set_ylabel("trials")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(out, dpi=100)
    plt.close(fig)
    return Path(out)
