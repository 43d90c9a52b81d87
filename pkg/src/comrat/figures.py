"""Render the report's analysis series as SVG files.

Rendering is headless (Agg) and reproducible: a fixed hash salt and a
stripped creation date keep the SVG output byte-identical across runs
for the same report. Series that came back empty still produce a file,
annotated "no data", so the set of artifacts is stable.
"""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

if TYPE_CHECKING:
    from .report import AnalysisReport

__all__ = ["FIGURE_NAMES", "export_figures"]

FIGURE_NAMES = [
    "factors_size.svg",
    "factors_authors.svg",
    "evolution.svg",
    "structure.svg",
    "words_decision.svg",
    "words_rationale.svg",
]

_HASH_SALT = "comrat-report"
_AUTHOR_LIMIT = 25
_WORD_LIMIT = 20


def _save(fig, path: Path) -> None:
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def _no_data(ax) -> None:
    ax.text(0.5, 0.5, "no data", ha="center", va="center", transform=ax.transAxes, color="gray")
    ax.set_xticks([])
    ax.set_yticks([])


def _new_figure(title: str):
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.set_title(title)
    return fig, ax


def _size_figure(r: AnalysisReport, path: Path) -> None:
    fig, ax = _new_figure("Rationale density by commit size")
    if r.size_series:
        ax.scatter(
            [p.size for p in r.size_series],
            [p.rationale_density for p in r.size_series],
            s=18,
            alpha=0.7,
        )
        ax.set_xlabel("sentences in commit")
        ax.set_ylabel("rationale density")
        ax.set_ylim(-0.05, 1.05)
    else:
        _no_data(ax)
    fig.tight_layout()
    _save(fig, path)


def _author_figure(r: AnalysisReport, path: Path) -> None:
    fig, ax = _new_figure("Average rationale density by author")
    rows = r.author_series[:_AUTHOR_LIMIT]
    if rows:
        labels = [f"{a.author_id} ({a.n_commits})" for a in rows]
        values = [a.avg_rationale_density or 0.0 for a in rows]
        positions = range(len(rows) - 1, -1, -1)
        ax.barh(list(positions), values)
        ax.set_yticks(list(positions), labels=labels, fontsize=7)
        ax.set_xlabel("average rationale density")
        ax.set_xlim(0, 1.05)
    else:
        _no_data(ax)
    fig.tight_layout()
    _save(fig, path)


def _evolution_figure(r: AnalysisReport, path: Path) -> None:
    fig, ax = _new_figure("Label density over time")
    if r.evolution:
        years = [p.year for p in r.evolution]
        ax.plot(years, [p.avg_rationale_density for p in r.evolution], marker="o", label="rationale")
        ax.plot(years, [p.avg_decision_density for p in r.evolution], marker="s", label="decision")
        ax.set_xlabel("year")
        ax.set_ylabel("average density")
        ax.set_ylim(-0.05, 1.05)
        ax.set_xticks(years)
        ax.legend()
    else:
        _no_data(ax)
    fig.tight_layout()
    _save(fig, path)


def _structure_figure(r: AnalysisReport, path: Path) -> None:
    fig, ax = _new_figure("Label counts by position in message")
    h = r.structure
    if sum(h.decision) + sum(h.rationale) + sum(h.none) > 0:
        bins = range(h.n_bins)
        ax.bar(bins, h.decision, label="decision")
        ax.bar(bins, h.rationale, bottom=h.decision, label="rationale")
        stacked = [d + rt for d, rt in zip(h.decision, h.rationale)]
        ax.bar(bins, h.none, bottom=stacked, label="neither")
        ax.set_xlabel("relative position bin")
        ax.set_ylabel("sentences")
        ax.set_xticks(list(bins))
        ax.legend()
    else:
        _no_data(ax)
    fig.tight_layout()
    _save(fig, path)


def _word_figure(entries: list[tuple[str, int]], title: str, path: Path) -> None:
    fig, ax = _new_figure(title)
    rows = entries[:_WORD_LIMIT]
    if rows:
        positions = range(len(rows) - 1, -1, -1)
        ax.barh(list(positions), [count for _, count in rows])
        ax.set_yticks(list(positions), labels=[word for word, _ in rows], fontsize=8)
        ax.set_xlabel("occurrences")
    else:
        _no_data(ax)
    fig.tight_layout()
    _save(fig, path)


def export_figures(r: AnalysisReport, out_dir: Path | str) -> list[Path]:
    """Write the six report figures into out_dir; returns the paths in a fixed order."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with plt.rc_context({"svg.hashsalt": _HASH_SALT}):
        paths = [out / name for name in FIGURE_NAMES]
        _size_figure(r, paths[0])
        _author_figure(r, paths[1])
        _evolution_figure(r, paths[2])
        _structure_figure(r, paths[3])
        _word_figure(r.decision_words.entries, "Most frequent decision words", paths[4])
        _word_figure(r.rationale_words.entries, "Most frequent rationale words", paths[5])
    return paths
