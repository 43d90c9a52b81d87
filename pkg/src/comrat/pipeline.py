"""Glue from fetched commits to a labelled dataset.

The CLI and the HTTP service both go through build_dataset so a module
analyzed either way yields the same dataset, the same report bytes, and
the same figures. Sentences from all commits are classified in one batch
(one adapter session when an external classifier is configured) and
sliced back per commit afterwards.
"""

from __future__ import annotations

from datetime import datetime, timezone
from typing import Callable

from .classify import ClassifierSpec, classify_batch
from .github_ingest import Commit, ModuleRef, load_cache_entry
from .metrics import CommitLabelled, LabelledDataset
from .preprocess import normalize_message, segment_sentences

__all__ = ["build_dataset", "dataset_fetched_at"]


def dataset_fetched_at(module: ModuleRef | None) -> datetime:
    """Fetch timestamp for a dataset: the cache entry's when one exists,
    so repeated cached runs produce identical report bytes; otherwise now."""
    if module is not None and module.cache_dir:
        entry = load_cache_entry(module)
        if entry is not None:
            return entry.fetched_at
    return datetime.now(timezone.utc)


def build_dataset(
    commits: list[Commit],
    spec: ClassifierSpec,
    module: ModuleRef | None = None,
    fetched_at: datetime | None = None,
    progress: Callable[[int, int], None] | None = None,
) -> LabelledDataset:
    per_commit_units = []
    flat = []
    for c in commits:
        units = segment_sentences(normalize_message(c.message))
        per_commit_units.append(units)
        flat.extend(units)

    labelled_flat = classify_batch(flat, spec, progress=progress)

    out: list[CommitLabelled] = []
    pos = 0
    for c, units in zip(commits, per_commit_units):
        out.append(CommitLabelled(commit=c, sentences=labelled_flat[pos : pos + len(units)]))
        pos += len(units)
    return LabelledDataset(commits=out, module=module, fetched_at=fetched_at)
