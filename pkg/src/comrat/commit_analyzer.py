"""Analyze one commit message in isolation.

This is the interactive path: paste a message, get per-sentence labels,
densities, and a verdict against a rationale-density threshold. The
boundary counts as passing: density equal to the threshold is a success.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .classify import ClassifierSpec, LabelledSentence, classify_batch
from .preprocess import normalize_message, segment_sentences

__all__ = [
    "CommitReport",
    "DEFAULT_THRESHOLD",
    "analyze_commit_message",
    "commit_report_document",
    "format_commit_report",
]

DEFAULT_THRESHOLD = 0.5

Verdict = Literal["success", "warning", "empty"]


@dataclass(frozen=True)
class CommitReport:
    sentences: list[LabelledSentence]
    number_of_sentences: int
    decision_density: float | None
    rationale_density: float | None
    verdict: Verdict
    threshold: float


def analyze_commit_message(
    raw: str,
    spec: ClassifierSpec | None = None,
    threshold: float = DEFAULT_THRESHOLD,
) -> CommitReport:
    """Normalize, segment, and label one message, then judge it against threshold."""
    if spec is None:
        spec = ClassifierSpec(kind="lexicon")
    units = segment_sentences(normalize_message(raw))
    labelled = classify_batch(units, spec)
    n = len(labelled)
    if n == 0:
        return CommitReport(
            sentences=[],
            number_of_sentences=0,
            decision_density=None,
            rationale_density=None,
            verdict="empty",
            threshold=threshold,
        )
    decision_density = sum(1 for s in labelled if s.verdict.decision) / n
    rationale_density = sum(1 for s in labelled if s.verdict.rationale) / n
    verdict: Verdict = "success" if rationale_density >= threshold else "warning"
    return CommitReport(
        sentences=labelled,
        number_of_sentences=n,
        decision_density=decision_density,
        rationale_density=rationale_density,
        verdict=verdict,
        threshold=threshold,
    )


def commit_report_document(r: CommitReport) -> dict:
    """The commit report as a plain JSON-ready dict (service and --format doc)."""
    return {
        "number_of_sentences": r.number_of_sentences,
        "decision_density": r.decision_density,
        "rationale_density": r.rationale_density,
        "threshold": r.threshold,
        "verdict": r.verdict,
        "sentences": [
            {
                "index": s.unit.index,
                "text": s.unit.text,
                "decision": s.verdict.decision,
                "rationale": s.verdict.rationale,
            }
            for s in r.sentences
        ],
    }


def _label_tag(s: LabelledSentence) -> str:
    parts = []
    if s.verdict.decision:
        parts.append("decision")
    if s.verdict.rationale:
        parts.append("rationale")
    return ", ".join(parts) if parts else "-"


def format_commit_report(r: CommitReport) -> str:
    if r.verdict == "empty":
        return "No sentences found in the message."
    lines = [f"Number of sentences: {r.number_of_sentences}"]
    width = max(len(_label_tag(s)) for s in r.sentences)
    for s in r.sentences:
        lines.append(f"  {s.unit.index + 1}. [{_label_tag(s):<{width}}] {s.unit.text}")
    lines.append(f"Decision density: {r.decision_density:.2f}")
    lines.append(f"Rationale density: {r.rationale_density:.2f}")
    if r.verdict == "success":
        lines.append(
            f"Success: rationale density {r.rationale_density:.2f} "
            f"meets the threshold {r.threshold:.2f}."
        )
    else:
        lines.append(
            f"Warning: rationale density {r.rationale_density:.2f} "
            f"is below the threshold {r.threshold:.2f}."
        )
    return "\n".join(lines)
