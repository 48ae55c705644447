"""Sentence segmentation and rule-based review-comment labeling.

Review text is split into sentences with a rule-based splitter, cleaned
of figure/table and venue-specific sentences, and labeled: question
sentences (contain a question mark) and proposal sentences (proposal
keyword, or verb-initial imperative ending with a period).
"""

from __future__ import annotations

import enum
import functools
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Protocol, Sequence

from .corpus import ReviewComment

# Scholarly abbreviations that do not end a sentence. "etc." is absent
# on purpose: it usually is sentence-final.
ABBREVIATIONS = (
    "fig.", "figs.", "eq.", "eqs.", "sec.", "secs.", "ref.", "refs.",
    "e.g.", "i.e.", "et al.", "cf.", "vs.", "resp.", "no.", "nos.",
    "dr.", "mr.", "mrs.", "ms.", "prof.", "approx.",
)

_TERMINATORS = ".?!"
_CLOSERS = "\"')]»”’"
_OPENERS = "\"'([«“‘"


def _is_abbreviation(text: str, dot_index: int) -> bool:
    prefix = text[: dot_index + 1].lower()
    for abbr in ABBREVIATIONS:
        if prefix.endswith(abbr):
            before = len(prefix) - len(abbr) - 1
            if before < 0 or prefix[before] in " (" + _OPENERS:
                return True
    return False


def split_sentences(text: str) -> list[str]:
    """Split text into sentences, whitespace-normalized.

    Boundaries sit after '.', '?' or '!' (plus trailing closing marks)
    followed by whitespace and an uppercase letter, digit, or opening
    quote/bracket; periods ending a known abbreviation never split.
    Joining the result with single spaces reproduces the input up to
    collapsed whitespace.
    """
    norm = " ".join(text.split())
    if not norm:
        return []
    sentences = []
    start = 0
    i = 0
    n = len(norm)
    while i < n:
        if norm[i] not in _TERMINATORS:
            i += 1
            continue
        j = i
        while j + 1 < n and norm[j + 1] in _TERMINATORS:
            j += 1
        k = j
        while k + 1 < n and norm[k + 1] in _CLOSERS:
            k += 1
        if k + 2 < n and norm[k + 1] == " ":
            nxt = norm[k + 2]
            opens_sentence = nxt.isupper() or nxt.isdigit() or nxt in _OPENERS
            blocked = norm[i] == "." and i == j and _is_abbreviation(norm, i)
            if opens_sentence and not blocked:
                sentences.append(norm[start : k + 1])
                start = k + 2
                i = k + 2
                continue
        i = j + 1
    tail = norm[start:]
    if tail:
        sentences.append(tail)
    return sentences


# --- question / proposal rules ---------------------------------------------

class PosTagger(Protocol):
    def tag(self, tokens: Sequence[str]) -> list[str]: ...


VERB_TAG = "VB"

# -ize/-ise/-ify words that are not verbs; guards the suffix heuristic.
_SUFFIX_NONVERBS = frozenset({
    "otherwise", "likewise", "clockwise", "counterclockwise", "edgewise",
    "streetwise", "paradise", "expertise", "precise", "concise", "noise",
    "premise", "franchise", "merchandise", "turquoise",
})
_VERB_SUFFIXES = ("ize", "ise", "ify")


def _load_lines(package_file: str, path: str | Path | None) -> list[str]:
    if path is None:
        text = resources.files("reviewkit.resources").joinpath(package_file).read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    return [line.strip() for line in text.splitlines()
            if line.strip() and not line.startswith("#")]


class LexiconPosTagger:
    """Lexicon-backed tagger: base-form verbs tag as VB, all else NN.

    Unknown tokens default to non-verb; words ending in -ize/-ise/-ify
    (outside a small stoplist) count as verbs.
    """

    def __init__(self, lexicon_path: str | Path | None = None):
        self._verbs = frozenset(w.lower() for w in _load_lines("verb_lexicon.txt", lexicon_path))

    def _is_base_verb(self, token: str) -> bool:
        word = token.lower().strip("\"'().,;:!?[]")
        if word in self._verbs:
            return True
        return (
            len(word) > 4
            and word.endswith(_VERB_SUFFIXES)
            and word not in _SUFFIX_NONVERBS
        )

    def tag(self, tokens: Sequence[str]) -> list[str]:
        return [VERB_TAG if self._is_base_verb(t) else "NN" for t in tokens]


@functools.lru_cache(maxsize=1)
def default_proposal_keywords() -> tuple[str, ...]:
    return tuple(_load_lines("proposal_keywords.txt", None))


@functools.lru_cache(maxsize=8)
def _keyword_pattern(keywords: tuple[str, ...]) -> re.Pattern:
    parts = [r"\b" + r"\s+".join(re.escape(w) for w in kw.split()) + r"\b"
             for kw in keywords]
    return re.compile("|".join(parts), re.IGNORECASE)


def is_question(sentence: str) -> bool:
    """A sentence is a question iff it contains a question mark."""
    return "?" in sentence


def is_imperative(sentence: str, tagger: PosTagger) -> bool:
    """True iff the first token tags as a base-form verb and the
    sentence ends with a period."""
    stripped = sentence.strip()
    if not stripped.endswith("."):
        return False
    tokens = [t for t in (w.strip("\"'()[]") for w in stripped.split()) if t]
    if not tokens:
        return False
    return tagger.tag(tokens)[0] == VERB_TAG


def is_proposal(sentence: str, tagger: PosTagger,
                keywords: Sequence[str] | None = None) -> bool:
    """Keyword match (word-boundary, case-insensitive) or imperative."""
    if keywords is None:
        keywords = default_proposal_keywords()
    if _keyword_pattern(tuple(keywords)).search(sentence):
        return True
    return is_imperative(sentence, tagger)


# --- filtering --------------------------------------------------------------

class RemovalReason(enum.Enum):
    FIGURE_TABLE = "FigureTable"
    PEERJ = "PeerJ"


# Word-boundary matching keeps "stable", "configure", ... out of the filter.
_FIGTABLE = re.compile(r"\bfig\.|\bfigure\b|\btable\b", re.IGNORECASE)
_PEERJ = re.compile(r"peerj", re.IGNORECASE)


def _partition_sentences(text: str) -> tuple[list[str], list[tuple[str, RemovalReason]]]:
    kept: list[str] = []
    removed: list[tuple[str, RemovalReason]] = []
    for sentence in split_sentences(text):
        if _FIGTABLE.search(sentence):
            removed.append((sentence, RemovalReason.FIGURE_TABLE))
        elif _PEERJ.search(sentence):
            removed.append((sentence, RemovalReason.PEERJ))
        else:
            kept.append(sentence)
    return kept, removed


def filter_review_sentences(text: str) -> tuple[str, list[tuple[str, RemovalReason]]]:
    """Drop figure/table and venue sentences; rejoin the rest with spaces."""
    kept, removed = _partition_sentences(text)
    return " ".join(kept), removed


# --- labeling ----------------------------------------------------------------

@dataclass
class LabeledReview:
    """Filtered review text plus the auto-extracted label sets.

    whole: the four segments, filtered, joined in native order with
    blank lines; ef: experimental design + validity of findings, same
    treatment; questions/proposals: verbatim kept sentences matching the
    respective rule (a sentence matching both counts as a question only).
    """

    whole: str
    ef: str
    questions: list[str]
    proposals: list[str]
    removed: list[tuple[str, RemovalReason]]


def label_review(review: ReviewComment, tagger: PosTagger,
                 keywords: Sequence[str] | None = None) -> LabeledReview:
    if keywords is None:
        keywords = default_proposal_keywords()
    kept_by_segment: dict[str, list[str]] = {}
    removed: list[tuple[str, RemovalReason]] = []
    for name, text in review.segments():
        kept, dropped = _partition_sentences(text)
        kept_by_segment[name] = kept
        removed.extend(dropped)

    def joined(names: list[str]) -> str:
        parts = [" ".join(kept_by_segment[n]) for n in names]
        return "\n\n".join(p for p in parts if p)

    order = [name for name, _ in review.segments()]
    questions: list[str] = []
    proposals: list[str] = []
    for name in order:
        for sentence in kept_by_segment[name]:
            if is_question(sentence):
                questions.append(sentence)
            elif is_proposal(sentence, tagger, keywords):
                proposals.append(sentence)
    return LabeledReview(
        whole=joined(order),
        ef=joined(["experimental_design", "validity_of_findings"]),
        questions=questions,
        proposals=proposals,
        removed=removed,
    )
