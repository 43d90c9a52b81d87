"""Dataset and report serialization.

Two artifacts leave the engine: the labelled dataset as RFC 4180 CSV
(one row per sentence) and the analysis report as a self-describing JSON
document with a published schema. Both are deterministic byte-for-byte
given the same inputs, and the CSV re-imports losslessly enough to
recompute every metric the report embeds.

The CSV carries sentence-level data only; raw messages, author display
names and the fetch timestamp live in the ingest cache, not here.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from importlib import resources

import jsonschema

from .analyses import (
    AuthorStat,
    FactorPoint,
    StructureHistogram,
    WordFrequencyTable,
    YearPoint,
    author_series,
    evolution_series,
    factor_size_series,
    load_stopwords,
    structure_histogram,
    word_frequencies,
)
from .classify import LabelledSentence, LabelVerdict
from .errors import ComratError
from .github_ingest import Commit
from .metrics import (
    CommitLabelled,
    DistributionCounts,
    LabelledDataset,
    PresenceMetrics,
    label_distribution,
    presence_metrics,
)
from .preprocess import SentenceUnit

__all__ = [
    "AnalysisReport",
    "CsvParseError",
    "SchemaError",
    "CSV_HEADER",
    "WORD_TABLE_LIMIT",
    "export_dataset_csv",
    "import_dataset_csv",
    "build_report",
    "serialize_report",
    "deserialize_report",
    "validate_report",
    "format_summary",
    "export_figures",
]

CSV_HEADER = [
    "commit_sha",
    "commit_date",
    "author_id",
    "sentence_index",
    "sentence_count",
    "sentence_text",
    "decision",
    "rationale",
]

SCHEMA_VERSION = 1
WORD_TABLE_LIMIT = 50


class CsvParseError(ComratError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SchemaError(ComratError):
    """The CSV columns or a field value do not match the dataset schema."""


@dataclass(frozen=True)
class AnalysisReport:
    module_url: str | None
    fetched_at: datetime | None
    classifier: str
    n_commits: int
    n_sentences: int
    distribution: DistributionCounts
    presence: PresenceMetrics
    size_series: list[FactorPoint]
    author_series: list[AuthorStat]
    evolution: list[YearPoint]
    structure: StructureHistogram
    decision_words: WordFrequencyTable
    rationale_words: WordFrequencyTable


def _format_utc(dt: datetime) -> str:
    return dt.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _parse_utc(value: str, line: int) -> datetime:
    try:
        if value.endswith("Z"):
            value = value[:-1] + "+00:00"
        dt = datetime.fromisoformat(value)
    except ValueError:
        raise CsvParseError(f"bad commit_date {value!r}", line)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def export_dataset_csv(d: LabelledDataset) -> bytes:
    """The labelled dataset as UTF-8 RFC 4180 CSV, one row per sentence."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(CSV_HEADER)
    for c in d.commits:
        for s in c.sentences:
            writer.writerow(
                [
                    c.commit.sha,
                    _format_utc(c.commit.committed_at),
                    c.commit.author_id,
                    s.unit.index,
                    s.unit.total,
                    s.unit.text,
                    "true" if s.verdict.decision else "false",
                    "true" if s.verdict.rationale else "false",
                ]
            )
    return buffer.getvalue().encode("utf-8")


def _parse_bool(value: str, column: str, line: int) -> bool:
    if value == "true":
        return True
    if value == "false":
        return False
    raise SchemaError(f"line {line}: column {column} must be true or false, got {value!r}")


def _parse_int(value: str, column: str, line: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise CsvParseError(f"column {column} must be an integer, got {value!r}", line)


def import_dataset_csv(data: bytes) -> LabelledDataset:
    """Rebuild a dataset from an export; module/fetch metadata come back None."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CsvParseError(f"not valid UTF-8: {exc}", 0)
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("empty file: missing header row")
    if header != CSV_HEADER:
        raise SchemaError(f"unexpected columns {header!r}")

    commits: list[CommitLabelled] = []
    seen_shas: set[str] = set()
    current_sha: str | None = None
    current_commit: Commit | None = None
    current_sentences: list[LabelledSentence] = []

    def _finish() -> None:
        if current_commit is None:
            return
        for s in current_sentences:
            if s.unit.total != len(current_sentences):
                raise SchemaError(
                    f"commit {current_commit.sha}: sentence_count {s.unit.total} "
                    f"does not match its {len(current_sentences)} rows"
                )
        commits.append(CommitLabelled(commit=current_commit, sentences=list(current_sentences)))

    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(CSV_HEADER):
            raise CsvParseError(f"expected {len(CSV_HEADER)} fields, got {len(row)}", line)
        sha, date_s, author_id, index_s, count_s, text_s, decision_s, rationale_s = row
        if sha != current_sha:
            _finish()
            if sha in seen_shas:
                raise CsvParseError(f"rows of commit {sha} are not contiguous", line)
            seen_shas.add(sha)
            current_sha = sha
            current_commit = Commit(
                sha=sha,
                author_id=author_id,
                author_name="",
                committed_at=_parse_utc(date_s, line),
                message="",
            )
            current_sentences = []
        index = _parse_int(index_s, "sentence_index", line)
        if index != len(current_sentences):
            raise CsvParseError(f"sentence_index {index} out of order", line)
        current_sentences.append(
            LabelledSentence(
                unit=SentenceUnit(
                    text=text_s,
                    index=index,
                    total=_parse_int(count_s, "sentence_count", line),
                ),
                verdict=LabelVerdict(
                    decision=_parse_bool(decision_s, "decision", line),
                    rationale=_parse_bool(rationale_s, "rationale", line),
                ),
            )
        )
    _finish()
    return LabelledDataset(commits=commits, module=None, fetched_at=None)


def build_report(
    d: LabelledDataset,
    classifier: str = "lexicon",
    stopwords: frozenset[str] | None = None,
    n_bins: int = 10,
) -> AnalysisReport:
    """Run every metric and analysis over the dataset and bundle the results."""
    if stopwords is None:
        stopwords = load_stopwords()
    distribution = label_distribution(d)
    decision_words, rationale_words = word_frequencies(d, stopwords)
    return AnalysisReport(
        module_url=d.module.api_url if d.module else None,
        fetched_at=d.fetched_at,
        classifier=classifier,
        n_commits=len(d.commits),
        n_sentences=distribution.total,
        distribution=distribution,
        presence=presence_metrics(d),
        size_series=factor_size_series(d),
        author_series=author_series(d),
        evolution=evolution_series(d),
        structure=structure_histogram(d, n_bins=n_bins),
        decision_words=WordFrequencyTable("decision", decision_words.entries[:WORD_TABLE_LIMIT]),
        rationale_words=WordFrequencyTable("rationale", rationale_words.entries[:WORD_TABLE_LIMIT]),
    )


def report_document(r: AnalysisReport) -> dict:
    """The report as a plain JSON-ready dict (deterministic key order)."""
    return {
        "schema_version": SCHEMA_VERSION,
        "metadata": {
            "module_url": r.module_url,
            "fetched_at": _format_utc(r.fetched_at) if r.fetched_at else None,
            "classifier": r.classifier,
            "n_commits": r.n_commits,
            "n_sentences": r.n_sentences,
        },
        "distribution": {
            "decision_only": r.distribution.decision_only,
            "rationale_only": r.distribution.rationale_only,
            "both": r.distribution.both,
            "neither": r.distribution.neither,
            "total": r.distribution.total,
        },
        "presence": {
            "n_commits": r.presence.n_commits,
            "n_commits_with_rationale": r.presence.n_commits_with_rationale,
            "rationale_percentage": r.presence.rationale_percentage,
            "average_rationale_density": r.presence.average_rationale_density,
        },
        "factors": {
            "size_series": [
                {"commit_sha": p.commit_sha, "size": p.size, "rationale_density": p.rationale_density}
                for p in r.size_series
            ],
            "author_series": [
                {
                    "author_id": a.author_id,
                    "n_commits": a.n_commits,
                    "avg_rationale_density": a.avg_rationale_density,
                }
                for a in r.author_series
            ],
        },
        "evolution": [
            {
                "year": p.year,
                "avg_rationale_density": p.avg_rationale_density,
                "avg_decision_density": p.avg_decision_density,
                "n_commits": p.n_commits,
            }
            for p in r.evolution
        ],
        "structure": {
            "n_bins": r.structure.n_bins,
            "decision": r.structure.decision,
            "rationale": r.structure.rationale,
            "none": r.structure.none,
        },
        "word_frequencies": {
            "decision": [[word, count] for word, count in r.decision_words.entries],
            "rationale": [[word, count] for word, count in r.rationale_words.entries],
        },
    }


def serialize_report(r: AnalysisReport) -> bytes:
    return (json.dumps(report_document(r), indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def deserialize_report(data: bytes) -> dict:
    return json.loads(data.decode("utf-8"))


def validate_report(document: dict) -> None:
    """Raise jsonschema.ValidationError when the document breaks the published schema."""
    schema = json.loads(
        resources.files("comrat.schema").joinpath("report.schema.json").read_text(encoding="utf-8")
    )
    jsonschema.validate(document, schema)


def format_summary(r: AnalysisReport) -> str:
    """The human-readable result block: dataset size, distribution, presence."""
    pct = "n/a" if r.presence.rationale_percentage is None else f"{r.presence.rationale_percentage:.2f}%"
    avg = (
        "n/a"
        if r.presence.average_rationale_density is None
        else f"{r.presence.average_rationale_density:.2f}"
    )
    lines = [
        "Resulting dataset:",
        "",
        f"Number of commits: {r.n_commits}",
        f"Number of sentences: {r.n_sentences}",
        "",
        "Distribution",
        "",
        f"Decision only sentences: {r.distribution.decision_only}",
        f"Rationale only sentences: {r.distribution.rationale_only}",
        f"Decision & Rationale sentences: {r.distribution.both}",
        f"No Decision and No Rationale sentences: {r.distribution.neither}",
        "",
        "Rationale Presence",
        "",
        f"Total Number of commits: {r.presence.n_commits}",
        f"Number of commits that contain rationale: {r.presence.n_commits_with_rationale}",
        f"Rationale Percentage: {pct}",
        f"Average Rationale Density: {avg}",
    ]
    return "\n".join(lines)


from .figures import export_figures  # noqa: E402  (re-export: figures are part of the report surface)
