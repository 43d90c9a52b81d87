"""Per-commit densities and module-level presence metrics.

A commit "contains rationale" when at least one of its sentences is
labelled Rationale. Densities are the labelled fraction of a commit's
sentences; the module-level average rationale density is taken over the
rationale-containing commits only. Values stay exact ratios here —
rounding to two decimals happens at presentation time.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime

from .classify import LabelledSentence
from .errors import ComratError
from .github_ingest import Commit, ModuleRef

__all__ = [
    "CommitLabelled",
    "LabelledDataset",
    "PresenceMetrics",
    "DistributionCounts",
    "ZeroSentences",
    "rationale_density",
    "decision_density",
    "presence_metrics",
    "label_distribution",
]


class ZeroSentences(ComratError):
    """Density is undefined for a commit whose message preprocessed to nothing."""


@dataclass(frozen=True)
class CommitLabelled:
    commit: Commit
    sentences: list[LabelledSentence]


@dataclass(frozen=True)
class LabelledDataset:
    """All labelled sentences of one module, grouped by commit.

    ``module`` and ``fetched_at`` are None for datasets rebuilt from a
    CSV export, which carries only sentence-level data.
    """

    commits: list[CommitLabelled]
    module: ModuleRef | None = None
    fetched_at: datetime | None = None


@dataclass(frozen=True)
class PresenceMetrics:
    n_commits: int
    n_commits_with_rationale: int
    rationale_percentage: float | None  # None when the dataset is empty
    average_rationale_density: float | None  # None when no commit has rationale


@dataclass(frozen=True)
class DistributionCounts:
    decision_only: int
    rationale_only: int
    both: int
    neither: int
    total: int


def rationale_density(c: CommitLabelled) -> float:
    if not c.sentences:
        raise ZeroSentences(f"commit {c.commit.sha} has no sentences")
    return sum(1 for s in c.sentences if s.verdict.rationale) / len(c.sentences)


def decision_density(c: CommitLabelled) -> float:
    if not c.sentences:
        raise ZeroSentences(f"commit {c.commit.sha} has no sentences")
    return sum(1 for s in c.sentences if s.verdict.decision) / len(c.sentences)


def presence_metrics(d: LabelledDataset) -> PresenceMetrics:
    """Rationale percentage and average density over one dataset.

    Zero-sentence commits count toward ``n_commits`` but can never be in
    the with-rationale set. Undefined averages stay None — zero would
    fabricate a measurement.
    """
    n_commits = len(d.commits)
    densities = [rationale_density(c) for c in d.commits if c.sentences]
    with_rationale = [x for x in densities if x > 0]
    percentage = 100.0 * len(with_rationale) / n_commits if n_commits else None
    average = sum(with_rationale) / len(with_rationale) if with_rationale else None
    return PresenceMetrics(
        n_commits=n_commits,
        n_commits_with_rationale=len(with_rationale),
        rationale_percentage=percentage,
        average_rationale_density=average,
    )


def label_distribution(d: LabelledDataset) -> DistributionCounts:
    """Partition every sentence into decision-only / rationale-only / both / neither."""
    decision_only = rationale_only = both = neither = 0
    for c in d.commits:
        for s in c.sentences:
            if s.verdict.decision and s.verdict.rationale:
                both += 1
            elif s.verdict.decision:
                decision_only += 1
            elif s.verdict.rationale:
                rationale_only += 1
            else:
                neither += 1
    return DistributionCounts(
        decision_only=decision_only,
        rationale_only=rationale_only,
        both=both,
        neither=neither,
        total=decision_only + rationale_only + both + neither,
    )
