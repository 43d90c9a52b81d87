"""The four analysis families over a labelled dataset.

* impact factors — rationale density versus commit size, and per-author
  averages with commit counts (commit count read as a proxy for
  experience);
* evolution — yearly averages of rationale and decision density;
* structure — where in the message each category lands, as a histogram
  over normalized sentence positions;
* word frequencies — most prominent words among decision-only and
  rationale-only sentences, stop words excluded.

Everything returns plain data series; rendering lives elsewhere.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from importlib import resources

from .metrics import CommitLabelled, LabelledDataset, decision_density, rationale_density

__all__ = [
    "FactorPoint",
    "AuthorStat",
    "YearPoint",
    "StructureHistogram",
    "WordFrequencyTable",
    "factor_size_series",
    "author_series",
    "evolution_series",
    "structure_histogram",
    "word_frequencies",
    "load_stopwords",
]

_TOKEN_RE = re.compile(r"[a-z0-9]+")


@dataclass(frozen=True)
class FactorPoint:
    commit_sha: str
    size: int
    rationale_density: float


@dataclass(frozen=True)
class AuthorStat:
    author_id: str
    n_commits: int
    avg_rationale_density: float | None


@dataclass(frozen=True)
class YearPoint:
    year: int
    avg_rationale_density: float
    avg_decision_density: float
    n_commits: int


@dataclass(frozen=True)
class StructureHistogram:
    n_bins: int
    decision: list[int]
    rationale: list[int]
    none: list[int]


@dataclass(frozen=True)
class WordFrequencyTable:
    category: str  # "decision" or "rationale"
    entries: list[tuple[str, int]]  # sorted by count desc, then word asc


def factor_size_series(d: LabelledDataset) -> list[FactorPoint]:
    """One (size, density) point per commit with at least one sentence, in commit order."""
    return [
        FactorPoint(
            commit_sha=c.commit.sha,
            size=len(c.sentences),
            rationale_density=rationale_density(c),
        )
        for c in d.commits
        if c.sentences
    ]


def author_series(d: LabelledDataset) -> list[AuthorStat]:
    """Per-author commit count and mean rationale density, busiest authors first."""
    by_author: dict[str, list[CommitLabelled]] = {}
    for c in d.commits:
        by_author.setdefault(c.commit.author_id, []).append(c)
    stats = []
    for author_id, commits in by_author.items():
        densities = [rationale_density(c) for c in commits if c.sentences]
        avg = sum(densities) / len(densities) if densities else None
        stats.append(AuthorStat(author_id=author_id, n_commits=len(commits), avg_rationale_density=avg))
    stats.sort(key=lambda s: (-s.n_commits, s.author_id))
    return stats


def evolution_series(d: LabelledDataset) -> list[YearPoint]:
    """Yearly averages of both densities, over density-defined commits, years ascending.

    Both series share the all-commits denominator (not only
    rationale-containing commits) so they stay comparable; the exported
    data lets either reading be recomputed.
    """
    by_year: dict[int, list[CommitLabelled]] = {}
    for c in d.commits:
        if c.sentences:
            by_year.setdefault(c.commit.committed_at.year, []).append(c)
    points = []
    for year in sorted(by_year):
        commits = by_year[year]
        points.append(
            YearPoint(
                year=year,
                avg_rationale_density=sum(rationale_density(c) for c in commits) / len(commits),
                avg_decision_density=sum(decision_density(c) for c in commits) / len(commits),
                n_commits=len(commits),
            )
        )
    return points


def structure_histogram(d: LabelledDataset, n_bins: int = 10) -> StructureHistogram:
    """Category counts over normalized sentence positions.

    A sentence at index i of a k-sentence commit sits at position
    (i + 0.5) / k, so single-sentence commits land mid-message without a
    special case. Multi-labelled sentences count once per category they
    bear; unlabelled ones count under none.
    """
    if n_bins < 1:
        raise ValueError("n_bins must be >= 1")
    decision = [0] * n_bins
    rationale = [0] * n_bins
    none = [0] * n_bins
    for c in d.commits:
        for s in c.sentences:
            position = (s.unit.index + 0.5) / s.unit.total
            bin_index = min(int(position * n_bins), n_bins - 1)
            if s.verdict.decision:
                decision[bin_index] += 1
            if s.verdict.rationale:
                rationale[bin_index] += 1
            if not s.verdict.decision and not s.verdict.rationale:
                none[bin_index] += 1
    return StructureHistogram(n_bins=n_bins, decision=decision, rationale=rationale, none=none)


def load_stopwords(extra_path: str | None = None) -> frozenset[str]:
    """Built-in stop words, optionally extended with module-specific keywords."""
    words = set()
    text = resources.files("comrat.data").joinpath("stopwords.txt").read_text(encoding="utf-8")
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip().lower()
        if line:
            words.add(line)
    if extra_path:
        with open(extra_path, encoding="utf-8") as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip().lower()
                if line:
                    words.add(line)
    return frozenset(words)


def _tokenize(text: str, stopwords: frozenset[str]) -> list[str]:
    tokens = _TOKEN_RE.findall(text.lower())
    return [t for t in tokens if len(t) >= 2 and not t.isdigit() and t not in stopwords]


def word_frequencies(
    d: LabelledDataset, stopwords: frozenset[str]
) -> tuple[WordFrequencyTable, WordFrequencyTable]:
    """Frequency tables for decision-only and rationale-only sentences.

    Multi-labelled sentences belong to neither table.
    """
    decision_counts: Counter = Counter()
    rationale_counts: Counter = Counter()
    for c in d.commits:
        for s in c.sentences:
            if s.verdict.decision and not s.verdict.rationale:
                decision_counts.update(_tokenize(s.unit.text, stopwords))
            elif s.verdict.rationale and not s.verdict.decision:
                rationale_counts.update(_tokenize(s.unit.text, stopwords))

    def _table(category: str, counts: Counter) -> WordFrequencyTable:
        entries = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return WordFrequencyTable(category=category, entries=entries)

    return _table("decision", decision_counts), _table("rationale", rationale_counts)
