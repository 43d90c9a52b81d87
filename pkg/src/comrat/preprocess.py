"""Commit message normalization and sentence segmentation.

Raw commit messages carry a lot of non-prose freight: trailer footers
(``Signed-off-by: ...``), diff hunks pasted into the body, bare URLs,
ASCII separators. ``normalize_message`` strips that freight and collapses
each remaining paragraph onto a single line; ``segment_sentences`` then
splits the normalized text into ordered sentence units.

The splitter is rule-based and deterministic on purpose: no statistical
tokenizer, so identical input always yields identical sentences. Known
cost: exotic punctuation can mis-split. Both the trailer key set and the
code-line heuristics can be overridden from plain-text config files
(one entry per line, ``#`` comments).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "SentenceUnit",
    "DEFAULT_TRAILER_KEYS",
    "normalize_message",
    "segment_sentences",
    "load_ruleset",
]

# Footer keys conventionally used in kernel-style commit messages. A line
# "Key: value" whose key (case-insensitive) is in this set is dropped.
DEFAULT_TRAILER_KEYS = frozenset(
    {
        "signed-off-by",
        "acked-by",
        "reviewed-by",
        "tested-by",
        "reported-by",
        "suggested-by",
        "co-developed-by",
        "cc",
        "link",
        "fixes",
        "closes",
        "see-also",
    }
)

# Line prefixes that mark pasted diff/code rather than prose.
DEFAULT_CODE_PREFIXES = ("diff --git", "@@", "+++", "---")

_TRAILER_RE = re.compile(r"^\s*([A-Za-z][A-Za-z-]*)\s*:\s*\S")
_URL_ONLY_RE = re.compile(r"^\s*<?(?:https?|ftp)://\S+>?\s*$")
_ALPHA_RE = re.compile(r"[A-Za-z]")
_WS_RUN_RE = re.compile(r"\s+")

# Dot contexts that do not end a sentence: single-letter initials,
# common abbreviations, version numbers (1.2), file-ish tokens.
_ABBREVIATIONS = frozenset({"e.g", "i.e", "etc", "vs", "cf", "al", "resp", "approx"})
_SENTENCE_END_RE = re.compile(r"([.!?]+)(\s+|$)")


@dataclass(frozen=True)
class SentenceUnit:
    """One sentence of a commit message.

    ``index`` is the 0-based position within the commit, ``total`` the
    commit's sentence count. ``text`` is trimmed and contains at least
    one alphabetic character.
    """

    text: str
    index: int
    total: int


def load_ruleset(path) -> frozenset[str]:
    """Read one rule per line from a plain-text file; ``#`` starts a comment."""
    entries = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                entries.append(line.lower())
    return frozenset(entries)


def _is_trailer(line: str, trailer_keys: frozenset[str]) -> bool:
    m = _TRAILER_RE.match(line)
    return bool(m) and m.group(1).lower() in trailer_keys


def _is_code_line(line: str, code_prefixes: tuple[str, ...]) -> bool:
    if line.startswith("    ") or line.startswith("\t"):
        return True
    stripped = line.strip()
    if any(stripped.startswith(p) for p in code_prefixes):
        return True
    return not _ALPHA_RE.search(stripped)


def normalize_message(
    raw: str,
    trailer_keys: frozenset[str] = DEFAULT_TRAILER_KEYS,
    code_prefixes: tuple[str, ...] = DEFAULT_CODE_PREFIXES,
) -> str:
    """Strip non-prose lines and collapse whitespace.

    Removes trailer lines, code-like lines (diff markers, hunk headers,
    lines indented four spaces or more, lines without any letter) and
    URL-only lines. Lines of one paragraph are joined with single
    spaces; blank lines survive as paragraph separators (``\\n\\n``).
    Idempotent; returns "" when nothing prose-like remains.
    """
    paragraphs: list[list[str]] = [[]]
    for line in raw.splitlines():
        if not line.strip():
            if paragraphs[-1]:
                paragraphs.append([])
            continue
        if _is_trailer(line, trailer_keys):
            continue
        if _is_code_line(line, code_prefixes):
            continue
        if _URL_ONLY_RE.match(line):
            continue
        paragraphs[-1].append(_WS_RUN_RE.sub(" ", line).strip())
    joined = [" ".join(lines) for lines in paragraphs if lines]
    return "\n\n".join(joined)


def _no_split_before(text: str, dot_pos: int) -> bool:
    """True when the terminal dot at ``dot_pos`` belongs to an abbreviation
    or a version number rather than a sentence end."""
    word_start = dot_pos
    while word_start > 0 and not text[word_start - 1].isspace():
        word_start -= 1
    word = text[word_start:dot_pos]
    bare = word.lstrip("([\"'")
    if len(bare) == 1 and bare.isalpha():
        return True
    if bare.lower().rstrip(".").lstrip(".") in _ABBREVIATIONS or bare.lower() in _ABBREVIATIONS:
        return True
    # digit.digit — version numbers like 2.6 or 4.19.3
    if bare and bare[-1].isdigit() and dot_pos + 1 < len(text) and text[dot_pos + 1].isdigit():
        return True
    return False


def _split_paragraph(paragraph: str) -> list[str]:
    sentences = []
    start = 0
    for m in _SENTENCE_END_RE.finditer(paragraph):
        if "." in m.group(1):
            # inspect the token holding the final dot
            if _no_split_before(paragraph, m.start(1)):
                continue
            # dot glued to the next char (no whitespace, e.g. "2.6" mid-token)
            if m.group(2) == "" and m.end(1) < len(paragraph):
                continue
        end = m.end(1)
        piece = paragraph[start:end].strip()
        if piece:
            sentences.append(piece)
        start = m.end()
    tail = paragraph[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def segment_sentences(normalized: str) -> list[SentenceUnit]:
    """Split normalized text into ordered sentence units.

    Splits at sentence-final punctuation followed by whitespace or end of
    text, and at paragraph boundaries — so the subject line (first
    paragraph) stands alone even without a terminal period. Guards
    against splits after single-letter tokens, common abbreviations
    (e.g., i.e., etc., vs.) and version-number dots. Fragments without
    any alphabetic character are dropped; survivors get 0-based indices
    and the commit's total.
    """
    if not normalized.strip():
        return []
    texts: list[str] = []
    for paragraph in normalized.split("\n\n"):
        for sentence in _split_paragraph(paragraph):
            if _ALPHA_RE.search(sentence):
                texts.append(sentence)
    total = len(texts)
    return [SentenceUnit(text=t, index=i, total=total) for i, t in enumerate(texts)]
