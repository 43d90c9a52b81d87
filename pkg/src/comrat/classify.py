"""Sentence labelling: Decision and Rationale as independent binary labels.

Two classifier kinds are supported behind one interface:

* ``lexicon`` — the built-in deterministic baseline. A sentence is a
  Decision when its leading verb-ish token (any token for kernel-style
  ``prefix:`` subject sentences) is an imperative change verb, or when it
  says "this patch/commit <verb>s". It is a Rationale when it carries a
  causal or justificatory cue ("because", "otherwise", "so that", ...)
  or a value judgment ("simpler", "redundant", ...). Lexicons live in
  editable plain-text files; inflected verb forms are derived in code.

* ``adapter`` — an external process speaking a line-delimited protocol on
  its standard streams. Per sentence the engine writes
  ``{"id": n, "text": "..."}`` and expects ``{"id": n, "decision": bool,
  "rationale": bool}`` back, in request order. The engine closes the
  adapter's stdin after the last request; the adapter must answer every
  request and exit 0. This is the plug-in point for model-backed
  classifiers, which are not bundled.

Both labels are independent: a sentence may be both, either, or neither.
"""

from __future__ import annotations

import json
import queue
import re
import shlex
import subprocess
import threading
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable

from .errors import ComratError
from .preprocess import SentenceUnit

__all__ = [
    "LabelVerdict",
    "LabelledSentence",
    "ClassifierSpec",
    "LexiconClassifier",
    "EmptyInput",
    "AdapterCrashed",
    "AdapterProtocolError",
    "AdapterTimeout",
    "classify_sentence",
    "classify_batch",
]


class EmptyInput(ComratError):
    """Raised when a sentence to classify is empty."""


class AdapterCrashed(ComratError):
    """Adapter process ended before answering every request.

    ``partial`` holds the verdicts received before the crash.
    """

    def __init__(self, message: str, partial: list["LabelledSentence"]):
        super().__init__(message)
        self.partial = partial


class AdapterProtocolError(ComratError):
    """Adapter produced a reply the engine cannot interpret."""


class AdapterTimeout(ComratError):
    """Adapter missed the per-sentence reply deadline."""


@dataclass(frozen=True)
class LabelVerdict:
    decision: bool
    rationale: bool


@dataclass(frozen=True)
class LabelledSentence:
    unit: SentenceUnit
    verdict: LabelVerdict


@dataclass(frozen=True)
class ClassifierSpec:
    """Which classifier to run.

    ``kind`` is ``"lexicon"`` or ``"adapter"``. Adapters need
    ``adapter_command`` (a shell-style command line). ``lexicon_path``
    optionally points at a directory holding ``decision_verbs.txt`` and/or
    ``rationale_cues.txt`` overriding the built-in lists.
    """

    kind: str = "lexicon"
    adapter_command: str | None = None
    lexicon_path: str | None = None
    timeout: float = 10.0

    def __post_init__(self):
        if self.kind not in ("lexicon", "adapter"):
            raise ValueError(f"unknown classifier kind: {self.kind!r}")
        if self.kind == "adapter" and not self.adapter_command:
            raise ValueError("adapter classifier requires adapter_command")


def _read_terms(text: str) -> list[str]:
    terms = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip().lower()
        if line:
            terms.append(line)
    return terms


def _load_lexicon(name: str, directory: str | None) -> list[str]:
    if directory:
        candidate = Path(directory) / name
        if candidate.exists():
            return _read_terms(candidate.read_text(encoding="utf-8"))
    return _read_terms(resources.files("comrat.data").joinpath(name).read_text(encoding="utf-8"))


def _verb_forms(term: str) -> set[str]:
    """Inflected forms of a base verb: drop -> drops/dropped, use -> uses/used."""
    forms = {term, term + "s", term + "es", term + "d", term + "ed"}
    if len(term) >= 3 and term[-1] not in "aeiouwxy" and term[-2] in "aeiou" and term[-3] not in "aeiou":
        forms.add(term + term[-1] + "ed")  # drop -> dropped
    return forms


_WORD_RE = re.compile(r"[a-z]+")
_SUBJECT_PREFIX_RE = re.compile(r"^\s*[\w./+,-]+:\s")
_THIS_PATCH_RE = re.compile(r"\bthis\s+(?:patch|commit|change)\s+([a-z]+)")
# tokens that may precede the verb in an imperative sentence
_LEADING_SKIP = frozenset(
    {"also", "always", "never", "now", "then", "finally", "additionally",
     "instead", "just", "please", "properly", "explicitly", "do", "don"}
)
# "since <version/year>" is temporal, not causal
_SINCE_NONCAUSAL_RE = re.compile(r"\bsince\s+(?:v?\d|then\b|commit\b)")


class LexiconClassifier:
    """Deterministic rule lookup against the two lexicons."""

    def __init__(self, lexicon_path: str | None = None):
        decision_terms = _load_lexicon("decision_verbs.txt", lexicon_path)
        rationale_terms = _load_lexicon("rationale_cues.txt", lexicon_path)
        self._decision_forms: set[str] = set()
        for term in decision_terms:
            self._decision_forms |= _verb_forms(term)
        self._since_is_cue = "since" in rationale_terms
        phrases = [t for t in rationale_terms if t != "since"]
        # longest-first so "leads to" wins over a hypothetical "leads"
        phrases.sort(key=len, reverse=True)
        if phrases:
            alternation = "|".join(re.escape(p).replace(r"\ ", r"\s+") for p in phrases)
            self._cue_re = re.compile(r"\b(?:%s)\b" % alternation)
        else:
            self._cue_re = None

    def _is_decision(self, lowered: str) -> bool:
        tokens = _WORD_RE.findall(lowered)
        if not tokens:
            return False
        if _SUBJECT_PREFIX_RE.match(lowered):
            return any(t in self._decision_forms for t in tokens)
        m = _THIS_PATCH_RE.search(lowered)
        if m and m.group(1) in self._decision_forms:
            return True
        for token in tokens:
            if token in _LEADING_SKIP:
                continue
            return token in self._decision_forms
        return False

    def _is_rationale(self, lowered: str) -> bool:
        if self._cue_re and self._cue_re.search(lowered):
            return True
        if self._since_is_cue:
            for m in re.finditer(r"\bsince\b", lowered):
                if not _SINCE_NONCAUSAL_RE.match(lowered, m.start()):
                    return True
        return False

    def verdict(self, text: str) -> LabelVerdict:
        lowered = text.lower()
        return LabelVerdict(decision=self._is_decision(lowered), rationale=self._is_rationale(lowered))


_lexicon_cache: dict[str | None, LexiconClassifier] = {}


def _lexicon_for(spec: ClassifierSpec) -> LexiconClassifier:
    key = spec.lexicon_path
    if key not in _lexicon_cache:
        _lexicon_cache[key] = LexiconClassifier(key)
    return _lexicon_cache[key]


def classify_sentence(text: str, spec: ClassifierSpec) -> LabelVerdict:
    """Label a single sentence. Adapter specs spawn a one-shot process."""
    if not text.strip():
        raise EmptyInput("cannot classify an empty sentence")
    if spec.kind == "lexicon":
        return _lexicon_for(spec).verdict(text)
    unit = SentenceUnit(text=text, index=0, total=1)
    return classify_batch([unit], spec)[0].verdict


def classify_batch(
    sentences: list[SentenceUnit],
    spec: ClassifierSpec,
    progress: Callable[[int, int], None] | None = None,
) -> list[LabelledSentence]:
    """Label sentences in order; output length equals input length.

    progress, when given, is called as progress(done, total) after each
    sentence receives its verdict.
    """
    if not sentences:
        return []
    if spec.kind == "lexicon":
        clf = _lexicon_for(spec)
        labelled = []
        for i, u in enumerate(sentences):
            labelled.append(LabelledSentence(unit=u, verdict=clf.verdict(u.text)))
            if progress:
                progress(i + 1, len(sentences))
        return labelled
    return _classify_via_adapter(sentences, spec, progress)


def _reader(stream, out: queue.Queue) -> None:
    for line in stream:
        out.put(line)
    out.put(None)  # EOF marker


def _classify_via_adapter(
    sentences: list[SentenceUnit],
    spec: ClassifierSpec,
    progress: Callable[[int, int], None] | None = None,
) -> list[LabelledSentence]:
    try:
        proc = subprocess.Popen(
            shlex.split(spec.adapter_command),
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            stderr=subprocess.DEVNULL,
            text=True,
        )
    except OSError as exc:
        raise AdapterCrashed(f"adapter failed to start: {exc}", partial=[])

    def _write_requests():
        try:
            for i, unit in enumerate(sentences):
                proc.stdin.write(json.dumps({"id": i, "text": unit.text}) + "\n")
                proc.stdin.flush()
            proc.stdin.close()
        except (BrokenPipeError, OSError):
            pass  # reader side reports the crash

    writer = threading.Thread(target=_write_requests, daemon=True)
    writer.start()

    lines: queue.Queue = queue.Queue()
    reader = threading.Thread(target=_reader, args=(proc.stdout, lines), daemon=True)
    reader.start()

    labelled: list[LabelledSentence] = []
    try:
        for i, unit in enumerate(sentences):
            try:
                line = lines.get(timeout=spec.timeout)
            except queue.Empty:
                raise AdapterTimeout(f"adapter gave no reply for sentence {i} within {spec.timeout}s")
            if line is None:
                raise AdapterCrashed(
                    f"adapter exited after {len(labelled)} of {len(sentences)} replies",
                    partial=labelled,
                )
            try:
                reply = json.loads(line)
            except json.JSONDecodeError:
                raise AdapterProtocolError(f"unparseable adapter reply: {line!r}")
            if (
                not isinstance(reply, dict)
                or reply.get("id") != i
                or not isinstance(reply.get("decision"), bool)
                or not isinstance(reply.get("rationale"), bool)
            ):
                raise AdapterProtocolError(f"bad adapter reply for sentence {i}: {line!r}")
            labelled.append(
                LabelledSentence(unit=unit, verdict=LabelVerdict(reply["decision"], reply["rationale"]))
            )
            if progress:
                progress(i + 1, len(sentences))
        try:
            returncode = proc.wait(timeout=spec.timeout)
        except subprocess.TimeoutExpired:
            raise AdapterTimeout("adapter did not exit after its final reply")
        if returncode != 0:
            raise AdapterCrashed(f"adapter exited with status {returncode}", partial=labelled)
    finally:
        if proc.poll() is None:
            proc.kill()
            proc.wait()
    return labelled
