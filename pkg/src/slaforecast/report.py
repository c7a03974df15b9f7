"""Figure rendering for forecast reports and simulation results.

Each render function writes a PNG next to the delimited data the CLI
emits; nothing here feeds back into the numbers.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .forecast import CombinationLandscape, ForecastReport
from .marketsim import SimulationOutcome, SweepRow
from .regression import TrendLine, Transform, predict


def render_at_least_one_curve(
    report: ForecastReport,
    path: str | Path,
    empirical: SimulationOutcome | None = None,
) -> Path:
    """Probability-vs-providers curve with the threshold line; optional
    empirical cumulative first-match overlay from a simulation run."""
    ns = [n for n, _ in report.curve]
    ps = [p for _, p in report.curve]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(ns, ps, marker="o", markersize=3, label="forecast")
    if empirical is not None:
        cum = empirical.cumulative_fractions()[: len(ns)]
        ax.plot(ns[: len(cum)], cum, linestyle="--", label="simulated")
    ax.axhline(report.threshold, color="crimson", linewidth=1,
               label=f"threshold {report.threshold:g}")
    ax.set_xlabel("providers contacted")
    ax.set_ylabel("P(at least one match)")
    ax.set_ylim(0, 1.05)
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_landscape(landscape: CombinationLandscape, path: str | Path) -> Path:
    """Combination landscape as bars sorted by probability."""
    entries = sorted(landscape.entries, key=lambda e: e[1])
    labels = ["+".join(names) for names, _ in entries]
    probs = [p for _, p in entries]
    fig, ax = plt.subplots(figsize=(max(7, 0.3 * len(entries)), 4.5))
    ax.bar(range(len(entries)), probs, color="steelblue")
    ax.set_xticks(range(len(entries)))
    ax.set_xticklabels(labels, rotation=90, fontsize=6)
    ax.set_ylabel(f"P(at least one match, n={landscape.provider_count})")
    ax.set_xlabel("service combination")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_negotiation_ranges(report: ForecastReport, path: str | Path) -> Path:
    names = list(report.negotiation_ranges)
    values = [report.negotiation_ranges[n] for n in names]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(names, values, color="seagreen")
    ax.set_ylabel("predicted negotiation range")
    ax.set_title(f"total {report.negotiation_range_total:.6g}")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_sweep(
    rows: list[SweepRow],
    path: str | Path,
    prob_line: TrendLine | None = None,
    range_line: TrendLine | None = None,
) -> Path:
    """Match probability and negotiation range against consumer length,
    with fitted trend lines when given."""
    lengths = [r.length for r in rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.scatter(lengths, [r.match_probability for r in rows], s=14)
    ax2.scatter(lengths, [r.mean_negotiation_range for r in rows], s=14,
                color="seagreen")
    xs = np.linspace(min(lengths), max(lengths), 200)
    if prob_line is not None:
        ax1.plot(xs, [predict(prob_line, x) for x in xs], color="gray")
    if range_line is not None:
        ax2.plot(xs, [predict(range_line, x) for x in xs], color="gray")
    ax1.set_xlabel("consumer interval length")
    ax1.set_ylabel("match probability")
    ax2.set_xlabel("consumer interval length")
    ax2.set_ylabel("mean negotiation range")
    for ax in (ax1, ax2):
        ax.grid(alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_first_match_histogram(
    outcome: SimulationOutcome, path: str | Path, max_ordinal: int = 30
) -> Path:
    """Cumulative first-match share over provider ordinals."""
    cum = outcome.cumulative_fractions()
    upto = min(max_ordinal, len(cum))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(range(1, upto + 1), cum[:upto] * 100, marker="o", markersize=3)
    ax.set_xlabel("provider ordinal")
    ax.set_ylabel("cumulative first matches (%)")
    ax.set_ylim(0, 105)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
