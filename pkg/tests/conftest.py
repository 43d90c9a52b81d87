"""Shared builders and fixtures for the test suite."""

from __future__ import annotations

import random
import sys
from datetime import datetime, timezone
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # mock_github, builders importable as modules

from comrat.classify import LabelledSentence, LabelVerdict
from comrat.github_ingest import Commit
from comrat.metrics import CommitLabelled, LabelledDataset
from comrat.preprocess import SentenceUnit

ADAPTERS_DIR = Path(__file__).parent / "stub_adapters"

# lexicon-labelled messages with known rationale densities
QUARTER_MESSAGE = (
    "Fix the parser. Update the docs. Clean the tree. The old code was broken."
)
HALF_MESSAGE = "Fix leak. Otherwise boot fails."
THREE_QUARTERS_MESSAGE = (
    "Fix the parser. It crashed because the index wrapped. "
    "Otherwise long runs fail. The old path was fragile."
)


def adapter_cmd(name: str) -> str:
    """Command string launching one of the stub adapter scripts."""
    return f"{sys.executable} {ADAPTERS_DIR / name}"


def make_commit(
    i: int = 0,
    message: str = "Fix crash.",
    author_id: str = "dev@example.com",
    year: int = 2021,
    month: int = 6,
    day: int = 15,
) -> Commit:
    return Commit(
        sha=format(i, "040x"),
        author_id=author_id,
        author_name=author_id.split("@")[0],
        committed_at=datetime(year, month, day, 12, 0, tzinfo=timezone.utc),
        message=message,
    )


def labelled(text: str, index: int, total: int, decision: bool, rationale: bool) -> LabelledSentence:
    return LabelledSentence(
        unit=SentenceUnit(text=text, index=index, total=total),
        verdict=LabelVerdict(decision=decision, rationale=rationale),
    )


def dataset_from_flags(
    commit_flags: list[list[tuple[bool, bool]]],
    authors: list[str] | None = None,
    years: list[int] | None = None,
) -> LabelledDataset:
    """Build a labelled dataset from per-commit (decision, rationale) flag lists."""
    commits = []
    for i, flags in enumerate(commit_flags):
        author = authors[i] if authors else f"dev{i % 5}@example.com"
        year = years[i] if years else 2020 + (i % 3)
        sentences = [
            labelled(f"synthetic sentence number {i} {j}.", j, len(flags), d, r)
            for j, (d, r) in enumerate(flags)
        ]
        commits.append(
            CommitLabelled(commit=make_commit(i, author_id=author, year=year), sentences=sentences)
        )
    return LabelledDataset(commits=commits)


def build_distribution_dataset(
    n_commits: int = 146,
    decision_only: int = 233,
    rationale_only: int = 162,
    both: int = 252,
    neither: int = 186,
    with_rationale: int = 124,
    seed: int = 20240817,
) -> LabelledDataset:
    """A dataset with exact label-distribution counts and an exact number
    of rationale-containing commits, deterministically scattered."""
    rng = random.Random(seed)
    rationale_pool = [(False, True)] * rationale_only + [(True, True)] * both
    plain_pool = [(True, False)] * decision_only + [(False, False)] * neither
    rng.shuffle(rationale_pool)
    rng.shuffle(plain_pool)
    assert with_rationale <= len(rationale_pool) and with_rationale <= n_commits
    assert n_commits - with_rationale <= len(plain_pool)

    per_commit: list[list[tuple[bool, bool]]] = [[] for _ in range(n_commits)]
    for i in range(with_rationale):
        per_commit[i].append(rationale_pool.pop())
    for i in range(with_rationale, n_commits):
        per_commit[i].append(plain_pool.pop())
    while rationale_pool:
        per_commit[rng.randrange(with_rationale)].append(rationale_pool.pop())
    while plain_pool:
        per_commit[rng.randrange(n_commits)].append(plain_pool.pop())
    for flags in per_commit:
        rng.shuffle(flags)
    rng.shuffle(per_commit)

    authors = [f"author{rng.randrange(20)}@example.com" for _ in range(n_commits)]
    years = [rng.choice([2016, 2017, 2018, 2019, 2020, 2021]) for _ in range(n_commits)]
    return dataset_from_flags(per_commit, authors=authors, years=years)


@pytest.fixture(scope="session")
def fig1_dataset() -> LabelledDataset:
    """146 commits, 833 sentences, 233/162/252/186 split, 124 with rationale."""
    return build_distribution_dataset()


# -- wire-format corpus for the mock server ---------------------------------

_MESSAGE_TEMPLATES = [
    "Fix the overflow in the ring buffer. The old bound was wrong because it ignored the header.",
    "Add a retry around the flaky probe.\n\nOtherwise cold boots fail on slow disks.\n"
    "Signed-off-by: Dev One <dev1@example.com>",
    "Rename the worker pool helper. No functional change.",
    "Remove the legacy shim since the driver now handles resets itself.",
    "Update the timeout to 30 seconds. The previous value was too small and caused spurious aborts.",
    "Refactor the queue setup.\n\n    spin_lock(&q->lock);\n    q->depth = 0;\n\n"
    "The locking order is documented in the header now.",
    "Use the shared allocation helper to avoid duplicating the bounds check.",
    "Revert the eager prefetch. It leads to cache thrash on small tables.",
    "Introduce a config knob for the scan interval.\n\nLink: https://example.com/issue/42",
    "Drop the unused include. Simpler build, same behavior.",
    "Convert the driver to the new API. This patch removes the compat wrappers "
    "because they would break with the next release.",
    "Move validation before allocation so that failures do not leak the buffer.",
]

_AUTHOR_POOL = [
    ("Ann Coder", "ann@example.com"),
    ("Bob Dev", "bob@example.com"),
    ("Cara Fixer", "cara@example.com"),
    ("Dan Hacker", "dan@example.com"),
    ("Eve Builder", "eve@example.com"),
    ("Finn Porter", "finn@example.com"),
]


def wire_corpus(n: int, seed: int = 7) -> list[dict]:
    """n synthetic commits in GitHub list-commits wire shape, newest first."""
    from mock_github import wire_commit

    rng = random.Random(seed)
    commits = []
    base_year = 2015
    for i in range(n):
        name, email = _AUTHOR_POOL[rng.randrange(len(_AUTHOR_POOL))]
        year = base_year + ((n - 1 - i) * 7) // max(n, 1)  # newest first, oldest last
        month = 1 + rng.randrange(12)
        day = 1 + rng.randrange(28)
        date = f"{year:04d}-{month:02d}-{day:02d}T{rng.randrange(24):02d}:{rng.randrange(60):02d}:00Z"
        message = _MESSAGE_TEMPLATES[i % len(_MESSAGE_TEMPLATES)]
        sha = f"{rng.getrandbits(128):032x}{i:08x}"
        commits.append(wire_commit(sha, email, name, date, message))
    return commits


@pytest.fixture(scope="session")
def corpus_217() -> list[dict]:
    """217 wire commits: pages of 100/100/17 at the default page size."""
    return wire_corpus(217)
