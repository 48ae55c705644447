"""Section-title classification and manuscript subset derivation.

Splits a manuscript into three derived texts: the summary-like sections,
the methods/results sections, and the full text. The classifier is
pluggable; the built-in baseline is a lexicon matcher over normalized
titles (the trained-model alternative plugs in through the same
interface).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Protocol

from .corpus import ManuscriptDoc
from .errors import EmptyTitle


class SectionClass(enum.Enum):
    SUMMARY = "summary"
    METHODS_RESULTS = "methods_results"
    OTHER = "other"


@dataclass
class ManuscriptSegments:
    """The three derived manuscript texts plus per-section provenance."""

    t_sum: str
    t_mr: str
    t_full: str
    provenance: list[tuple[str, SectionClass]]


class TitleClassifier(Protocol):
    def classify(self, title: str) -> SectionClass: ...


_LEADING_NUMBERING = re.compile(r"^\s*(?:[0-9]+|[ivxlcdm]+)(?:[.)\]:\-]+|\s)\s*", re.IGNORECASE)
_EDGE_PUNCT = re.compile(r"^[\s.:;,)\]\-]+|[\s.:;,(\[\-]+$")


def normalize_title(title: str) -> str:
    """Lowercase, strip section numbering and edge punctuation, fold '&'."""
    text = title.lower().replace("&", " and ")
    while True:
        stripped = _LEADING_NUMBERING.sub("", text, count=1)
        if stripped == text:
            break
        text = stripped
    text = _EDGE_PUNCT.sub("", text)
    return " ".join(text.split())


def _parse_lexicon_line(line: str) -> tuple[str, SectionClass] | None:
    line = line.strip()
    if not line or line.startswith("#"):
        return None
    pattern, _, label = line.partition("\t")
    return normalize_title(pattern), SectionClass(label.strip())


class LexiconTitleClassifier:
    """Baseline classifier: exact lexicon match, then substring fallback.

    Titles matching patterns of both classes resolve to METHODS_RESULTS
    (methods/results content dominates the reviewing focus). Anything
    unmatched is OTHER.
    """

    def __init__(self, lexicon_path: str | Path | None = None):
        if lexicon_path is None:
            text = resources.files("reviewkit.resources").joinpath("section_lexicon.txt").read_text("utf-8")
        else:
            text = Path(lexicon_path).read_text("utf-8")
        self._exact: dict[str, SectionClass] = {}
        for line in text.splitlines():
            parsed = _parse_lexicon_line(line)
            if parsed:
                self._exact[parsed[0]] = parsed[1]

    def classify(self, title: str) -> SectionClass:
        normalized = normalize_title(title)
        if normalized in self._exact:
            return self._exact[normalized]
        matched = {
            cls for pattern, cls in self._exact.items() if pattern in normalized
        }
        if SectionClass.METHODS_RESULTS in matched:
            return SectionClass.METHODS_RESULTS
        if SectionClass.SUMMARY in matched:
            return SectionClass.SUMMARY
        return SectionClass.OTHER


def classify_section_title(title: str, classifier: TitleClassifier) -> SectionClass:
    """Classify one section title; raises EmptyTitle on blank input."""
    if not title.strip():
        raise EmptyTitle("section title is empty")
    return classifier.classify(title)


def segment_manuscript(doc: ManuscriptDoc, classifier: TitleClassifier) -> ManuscriptSegments:
    """Derive the summary, methods/results, and full-text subsets.

    Every section feeds the full text; summary-class sections feed the
    summary subset and methods/results-class sections the methods subset,
    in document order, bodies joined by newlines. Untitled sections count
    as OTHER. Empty subsets are permitted (visible in provenance).
    """
    sum_parts: list[str] = []
    mr_parts: list[str] = []
    full_parts: list[str] = []
    provenance: list[tuple[str, SectionClass]] = []
    for title, body in doc.sections:
        if title.strip():
            cls = classify_section_title(title, classifier)
        else:
            cls = SectionClass.OTHER
        provenance.append((title, cls))
        full_parts.append(body)
        if cls is SectionClass.SUMMARY:
            sum_parts.append(body)
        elif cls is SectionClass.METHODS_RESULTS:
            mr_parts.append(body)
    return ManuscriptSegments(
        t_sum="\n".join(sum_parts),
        t_mr="\n".join(mr_parts),
        t_full="\n".join(full_parts),
        provenance=provenance,
    )
