"""Commit-message rationale analysis.

Fetch a module's commit history from the GitHub API, split messages into
sentences, label each sentence as decision and/or rationale, and derive
presence metrics, factor/evolution/structure analyses, and word
frequency tables, exported as CSV, a JSON report, and SVG figures.
"""

from .classify import ClassifierSpec, LabelledSentence, LabelVerdict, classify_batch, classify_sentence
from .commit_analyzer import CommitReport, analyze_commit_message
from .errors import ComratError
from .github_ingest import Commit, ModuleRef, fetch_commits
from .metrics import (
    CommitLabelled,
    DistributionCounts,
    LabelledDataset,
    PresenceMetrics,
    label_distribution,
    presence_metrics,
    rationale_density,
)
from .pipeline import build_dataset
from .preprocess import SentenceUnit, normalize_message, segment_sentences
from .report import (
    AnalysisReport,
    build_report,
    export_dataset_csv,
    export_figures,
    format_summary,
    import_dataset_csv,
    serialize_report,
    validate_report,
)

__all__ = [
    "ClassifierSpec",
    "LabelVerdict",
    "LabelledSentence",
    "classify_batch",
    "classify_sentence",
    "CommitReport",
    "analyze_commit_message",
    "ComratError",
    "Commit",
    "ModuleRef",
    "fetch_commits",
    "CommitLabelled",
    "DistributionCounts",
    "LabelledDataset",
    "PresenceMetrics",
    "label_distribution",
    "presence_metrics",
    "rationale_density",
    "build_dataset",
    "SentenceUnit",
    "normalize_message",
    "segment_sentences",
    "AnalysisReport",
    "build_report",
    "export_dataset_csv",
    "export_figures",
    "format_summary",
    "import_dataset_csv",
    "serialize_report",
    "validate_report",
]

__version__ = "0.1.0"
