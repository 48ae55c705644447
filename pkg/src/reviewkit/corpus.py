"""Domain model and ingestion for open-peer-review corpora.

Parses TEI-XML manuscripts (as produced by PDF-to-XML converters) and
JSON corpus records into typed objects. Corpus files are JSON-Lines,
one record per line, UTF-8.
"""

from __future__ import annotations

import enum
import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .errors import EmptyDocument, MalformedXml, SchemaViolation


class Decision(enum.Enum):
    ACCEPT = "Accept"
    MINOR_REVISION = "MinorRevision"
    MAJOR_REVISION = "MajorRevision"
    REJECT = "Reject"
    UNKNOWN = "Unknown"


# Unrecognized decision strings map to UNKNOWN: corpus dumps are heterogeneous.
DECISION_ALIASES = {
    "accept": Decision.ACCEPT,
    "minor revision": Decision.MINOR_REVISION,
    "minor revisions": Decision.MINOR_REVISION,
    "major revision": Decision.MAJOR_REVISION,
    "major revisions": Decision.MAJOR_REVISION,
    "reject": Decision.REJECT,
}

# Spelling used when serializing, chosen so records round-trip.
DECISION_LABELS = {
    Decision.ACCEPT: "accept",
    Decision.MINOR_REVISION: "minor revision",
    Decision.MAJOR_REVISION: "major revision",
    Decision.REJECT: "reject",
    Decision.UNKNOWN: "unknown",
}


def word_count(text: str) -> int:
    """Number of maximal nonempty runs of non-whitespace characters."""
    return len(text.split())


def parse_decision(value: str) -> Decision:
    return DECISION_ALIASES.get(" ".join(value.lower().split()), Decision.UNKNOWN)


@dataclass
class ManuscriptDoc:
    """One manuscript version as an ordered list of (title, body) sections."""

    version: int
    sections: list[tuple[str, str]]

    @property
    def word_count(self) -> int:
        return sum(word_count(body) for _, body in self.sections)


@dataclass
class ReviewComment:
    """One review with the four native segments, stored verbatim."""

    reviewer_label: str | None
    basic_reporting: str = ""
    experimental_design: str = ""
    validity_of_findings: str = ""
    additional_comments: str = ""

    def segments(self) -> list[tuple[str, str]]:
        """Segments in native page order."""
        return [
            ("basic_reporting", self.basic_reporting),
            ("experimental_design", self.experimental_design),
            ("validity_of_findings", self.validity_of_findings),
            ("additional_comments", self.additional_comments),
        ]


@dataclass
class ReviewRound:
    round_index: int
    manuscript_version: int
    reviews: list[ReviewComment]
    meta_review: str | None = None
    decision_note: str | None = None


@dataclass
class RebuttalLetter:
    round_index: int
    text: str


@dataclass
class PaperRecord:
    """One paper with all versions, rounds, rebuttals and the decision."""

    paper_id: str
    title: str = ""
    disciplines: set[str] = field(default_factory=set)
    subjects: set[str] = field(default_factory=set)
    manuscripts: list[ManuscriptDoc] = field(default_factory=list)
    review_rounds: list[ReviewRound] = field(default_factory=list)
    rebuttals: list[RebuttalLetter] = field(default_factory=list)
    decision: Decision = Decision.UNKNOWN

    def manuscript(self, version: int) -> ManuscriptDoc | None:
        for doc in self.manuscripts:
            if doc.version == version:
                return doc
        return None


# --- TEI parsing ---------------------------------------------------------

def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _element_text(el: ET.Element) -> str:
    return " ".join("".join(el.itertext()).split())


def _paragraphs(el: ET.Element) -> list[str]:
    """Direct <p> children of el; figures and tables are dropped."""
    parts = []
    for child in el:
        name = _local(child.tag)
        if name in ("figure", "table"):
            continue
        if name == "p":
            text = _element_text(child)
            if text:
                parts.append(text)
    return parts


def parse_tei(xml_text: str) -> ManuscriptDoc:
    """Parse a TEI manuscript into a ManuscriptDoc (version 1).

    The abstract, when present, becomes the first section titled
    "Abstract"; each body division becomes one section with its head as
    title and its paragraphs joined with single newlines.

    Raises MalformedXml for unparseable input and EmptyDocument when
    there is neither an abstract nor any body division.
    """
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        raise MalformedXml(f"not well-formed XML: {exc}") from exc

    sections: list[tuple[str, str]] = []

    abstract = next((el for el in root.iter() if _local(el.tag) == "abstract"), None)
    if abstract is not None:
        paras = _paragraphs(abstract)
        # abstracts often nest paragraphs inside a div
        for sub in abstract:
            if _local(sub.tag) == "div":
                paras.extend(_paragraphs(sub))
        body_text = "\n".join(paras) if paras else _element_text(abstract)
        if body_text:
            sections.append(("Abstract", body_text))

    body = next((el for el in root.iter() if _local(el.tag) == "body"), None)
    if body is not None:
        for div in (el for el in body.iter() if _local(el.tag) == "div"):
            head = next((c for c in div if _local(c.tag) == "head"), None)
            title = _element_text(head) if head is not None else ""
            sections.append((title, "\n".join(_paragraphs(div))))

    if not sections:
        raise EmptyDocument("no abstract and no body divisions")
    return ManuscriptDoc(version=1, sections=sections)


# --- JSON record loading --------------------------------------------------

def _require(obj: dict, key: str, kind, path: str):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaViolation(f"missing required field: {path}")
    value = obj[key]
    if kind is str and isinstance(value, str):
        return value
    if kind is int and isinstance(value, int) and not isinstance(value, bool):
        return value
    if kind is list and isinstance(value, list):
        return value
    raise SchemaViolation(f"wrong type for field: {path}")


def _optional_str(obj: dict, key: str, path: str) -> str | None:
    value = obj.get(key)
    if value is None:
        return None
    if not isinstance(value, str):
        raise SchemaViolation(f"wrong type for field: {path}")
    return value


def _str_list(obj: dict, key: str, path: str) -> list[str]:
    value = obj.get(key, [])
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise SchemaViolation(f"wrong type for field: {path}")
    return value


def _load_manuscript(obj, path: str) -> ManuscriptDoc:
    if not isinstance(obj, dict):
        raise SchemaViolation(f"wrong type for field: {path}")
    version = _require(obj, "version", int, f"{path}.version")
    if version < 1:
        raise SchemaViolation(f"version must be positive: {path}.version")
    sections = []
    for i, sec in enumerate(_require(obj, "sections", list, f"{path}.sections")):
        if not isinstance(sec, dict):
            raise SchemaViolation(f"wrong type for field: {path}.sections[{i}]")
        sections.append((
            _require(sec, "title", str, f"{path}.sections[{i}].title"),
            _require(sec, "body", str, f"{path}.sections[{i}].body"),
        ))
    return ManuscriptDoc(version=version, sections=sections)


def _load_review(obj, path: str) -> ReviewComment:
    if not isinstance(obj, dict):
        raise SchemaViolation(f"wrong type for field: {path}")
    review = ReviewComment(
        reviewer_label=_optional_str(obj, "reviewer", f"{path}.reviewer"),
        basic_reporting=obj.get("basic_reporting", ""),
        experimental_design=obj.get("experimental_design", ""),
        validity_of_findings=obj.get("validity_of_findings", ""),
        additional_comments=obj.get("additional_comments", ""),
    )
    for name, text in review.segments():
        if not isinstance(text, str):
            raise SchemaViolation(f"wrong type for field: {path}.{name}")
    if not any(text for _, text in review.segments()):
        raise SchemaViolation(f"all four review segments empty: {path}")
    return review


def _load_round(obj, path: str, versions: set[int]) -> ReviewRound:
    if not isinstance(obj, dict):
        raise SchemaViolation(f"wrong type for field: {path}")
    round_index = _require(obj, "round", int, f"{path}.round")
    version = _require(obj, "manuscript_version", int, f"{path}.manuscript_version")
    if version not in versions:
        raise SchemaViolation(f"unknown manuscript version {version}: {path}.manuscript_version")
    reviews = [
        _load_review(r, f"{path}.reviews[{i}]")
        for i, r in enumerate(obj.get("reviews", []))
    ]
    meta_review = _optional_str(obj, "meta_review", f"{path}.meta_review")
    if not reviews and meta_review is None:
        raise SchemaViolation(f"round has neither reviews nor a meta-review: {path}")
    return ReviewRound(
        round_index=round_index,
        manuscript_version=version,
        reviews=reviews,
        meta_review=meta_review,
        decision_note=_optional_str(obj, "decision_note", f"{path}.decision_note"),
    )


def load_record(json_text: str) -> PaperRecord:
    """Parse one corpus record (JSON object) into a PaperRecord.

    Unknown JSON fields are ignored; missing optional fields default to
    empty values or Decision.UNKNOWN. Raises SchemaViolation naming the
    offending field path for any missing/ill-typed required field.
    """
    try:
        obj = json.loads(json_text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise SchemaViolation(f"record is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise SchemaViolation("record is not a JSON object")

    paper_id = _require(obj, "paper_id", str, "paper_id")
    manuscripts = [
        _load_manuscript(m, f"manuscripts[{i}]")
        for i, m in enumerate(_require(obj, "manuscripts", list, "manuscripts"))
    ]
    if not manuscripts:
        raise SchemaViolation("manuscripts must be nonempty: manuscripts")
    versions = [m.version for m in manuscripts]
    if versions[0] != 1 or any(b <= a for a, b in zip(versions, versions[1:])):
        raise SchemaViolation("versions must increase strictly from 1: manuscripts")

    rounds = [
        _load_round(r, f"review_rounds[{i}]", set(versions))
        for i, r in enumerate(obj.get("review_rounds", []))
    ]
    indices = [r.round_index for r in rounds]
    if len(indices) != len(set(indices)):
        raise SchemaViolation("duplicate round index: review_rounds")

    rebuttals = []
    for i, reb in enumerate(obj.get("rebuttals", [])):
        if not isinstance(reb, dict):
            raise SchemaViolation(f"wrong type for field: rebuttals[{i}]")
        rebuttals.append(RebuttalLetter(
            round_index=_require(reb, "round", int, f"rebuttals[{i}].round"),
            text=_require(reb, "text", str, f"rebuttals[{i}].text"),
        ))

    decision = obj.get("decision", "")
    if not isinstance(decision, str):
        raise SchemaViolation("wrong type for field: decision")

    return PaperRecord(
        paper_id=paper_id,
        title=obj.get("title", "") if isinstance(obj.get("title", ""), str) else "",
        disciplines=set(_str_list(obj, "disciplines", "disciplines")),
        subjects=set(_str_list(obj, "subjects", "subjects")),
        manuscripts=manuscripts,
        review_rounds=rounds,
        rebuttals=rebuttals,
        decision=parse_decision(decision),
    )


def dump_record(record: PaperRecord) -> dict:
    """Serialize a PaperRecord back to the corpus JSON shape."""
    return {
        "paper_id": record.paper_id,
        "title": record.title,
        "disciplines": sorted(record.disciplines),
        "subjects": sorted(record.subjects),
        "manuscripts": [
            {
                "version": m.version,
                "sections": [{"title": t, "body": b} for t, b in m.sections],
            }
            for m in record.manuscripts
        ],
        "review_rounds": [
            {
                "round": r.round_index,
                "manuscript_version": r.manuscript_version,
                "reviews": [
                    {
                        "reviewer": rev.reviewer_label,
                        "basic_reporting": rev.basic_reporting,
                        "experimental_design": rev.experimental_design,
                        "validity_of_findings": rev.validity_of_findings,
                        "additional_comments": rev.additional_comments,
                    }
                    for rev in r.reviews
                ],
                "meta_review": r.meta_review,
                "decision_note": r.decision_note,
            }
            for r in record.review_rounds
        ],
        "rebuttals": [{"round": reb.round_index, "text": reb.text} for reb in record.rebuttals],
        "decision": DECISION_LABELS[record.decision],
    }


def load_corpus(lines) -> list[PaperRecord]:
    """Load PaperRecords from an iterable of JSON lines, skipping blanks."""
    records = []
    seen = set()
    for line in lines:
        if not line.strip():
            continue
        record = load_record(line)
        if record.paper_id in seen:
            raise SchemaViolation(f"duplicate paper_id: {record.paper_id}")
        seen.add(record.paper_id)
        records.append(record)
    return records
