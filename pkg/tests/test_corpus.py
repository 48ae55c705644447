import json
import random

import pytest

from reviewkit.corpus import (
    Decision,
    dump_record,
    load_record,
    parse_decision,
    parse_tei,
    word_count,
)
from reviewkit.errors import EmptyDocument, MalformedXml, SchemaViolation

from fixtures import corpus_jsonl, dataset_corpus, stats_corpus

TEI_NS = 'xmlns="http://www.tei-c.org/ns/1.0"'

MINIMAL_RECORD = {
    "paper_id": "x1",
    "title": "A study",
    "disciplines": ["biology"],
    "subjects": ["ecology"],
    "manuscripts": [
        {"version": 1, "sections": [{"title": "Abstract", "body": "Short text."}]}
    ],
    "review_rounds": [
        {
            "round": 1,
            "manuscript_version": 1,
            "reviews": [{
                "reviewer": "R1",
                "basic_reporting": "Fine.",
                "experimental_design": "",
                "validity_of_findings": "",
                "additional_comments": "",
            }],
            "meta_review": None,
            "decision_note": None,
        }
    ],
    "rebuttals": [{"round": 1, "text": "We thank the reviewer."}],
    "decision": "accept",
}


def test_parse_tei_abstract_and_div():
    xml = (f'<TEI {TEI_NS}><text><front><abstract><p>A.</p></abstract></front>'
           '<body><div><head>Methods</head><p>B.</p></div></body></text></TEI>')
    doc = parse_tei(xml)
    assert doc.sections == [("Abstract", "A."), ("Methods", "B.")]
    assert doc.word_count == 2


def test_parse_tei_empty_document():
    with pytest.raises(EmptyDocument):
        parse_tei(f'<TEI {TEI_NS}><text><body></body></text></TEI>')


def test_parse_tei_malformed():
    with pytest.raises(MalformedXml):
        parse_tei("<TEI><te")


def test_parse_tei_drops_figures_and_preserves_order():
    xml = (
        f'<TEI {TEI_NS}><text><body>'
        '<div><head>Intro</head><p>One.</p><figure><p>caption</p></figure></div>'
        '<div><head>Data</head><p>Two.</p><p>Three.</p></div>'
        '</body></text></TEI>'
    )
    doc = parse_tei(xml)
    assert [t for t, _ in doc.sections] == ["Intro", "Data"]
    assert doc.sections[0][1] == "One."
    assert doc.sections[1][1] == "Two.\nThree."


def test_parse_tei_works_without_namespace():
    doc = parse_tei("<TEI><text><body><div><head>S</head><p>Body here.</p></div>"
                    "</body></text></TEI>")
    assert doc.sections == [("S", "Body here.")]


def test_load_record_minimal():
    record = load_record(json.dumps(MINIMAL_RECORD))
    assert record.paper_id == "x1"
    assert record.title == "A study"
    assert record.disciplines == {"biology"}
    assert len(record.manuscripts) == 1
    assert record.manuscripts[0].sections == [("Abstract", "Short text.")]
    assert len(record.review_rounds) == 1
    assert record.review_rounds[0].reviews[0].reviewer_label == "R1"
    assert record.decision is Decision.ACCEPT
    assert record.rebuttals[0].text == "We thank the reviewer."


def test_load_record_missing_paper_id():
    obj = dict(MINIMAL_RECORD)
    del obj["paper_id"]
    with pytest.raises(SchemaViolation, match="paper_id"):
        load_record(json.dumps(obj))


def test_load_record_ignores_unknown_fields_and_defaults():
    obj = {"paper_id": "x2", "manuscripts": MINIMAL_RECORD["manuscripts"],
           "bogus": 42}
    record = load_record(json.dumps(obj))
    assert record.decision is Decision.UNKNOWN
    assert record.review_rounds == []
    assert record.disciplines == set()


@pytest.mark.parametrize("raw,expected", [
    ("accept", Decision.ACCEPT),
    ("Accept", Decision.ACCEPT),
    ("MINOR REVISION", Decision.MINOR_REVISION),
    ("minor revisions", Decision.MINOR_REVISION),
    ("Major Revisions", Decision.MAJOR_REVISION),
    ("reject", Decision.REJECT),
    ("desk reject", Decision.UNKNOWN),
    ("", Decision.UNKNOWN),
])
def test_decision_mapping(raw, expected):
    assert parse_decision(raw) is expected


def test_load_record_round_references_unknown_version():
    obj = json.loads(json.dumps(MINIMAL_RECORD))
    obj["review_rounds"][0]["manuscript_version"] = 3
    with pytest.raises(SchemaViolation, match="manuscript_version"):
        load_record(json.dumps(obj))


def test_load_record_versions_must_increase_from_one():
    obj = json.loads(json.dumps(MINIMAL_RECORD))
    obj["manuscripts"] = [
        {"version": 2, "sections": [{"title": "T", "body": "B"}]},
    ]
    obj["review_rounds"] = []
    with pytest.raises(SchemaViolation, match="manuscripts"):
        load_record(json.dumps(obj))


def test_round_trip_fixture_records():
    for record in dataset_corpus() + stats_corpus():
        line = json.dumps(dump_record(record))
        assert load_record(line) == record


def test_round_trip_minimal():
    record = load_record(json.dumps(MINIMAL_RECORD))
    assert load_record(json.dumps(dump_record(record))) == record


def test_load_record_never_crashes_on_arbitrary_bytes():
    rng = random.Random(99)
    for _ in range(300):
        length = rng.randrange(0, 40)
        blob = "".join(chr(rng.randrange(1, 0x250)) for _ in range(length))
        with pytest.raises(SchemaViolation):
            load_record(blob)


def test_load_record_fuzzed_json_objects():
    rng = random.Random(7)
    scalars = [None, True, 0, 1.5, "x", [], {}, {"paper_id": 3}]
    for _ in range(200):
        obj = rng.choice(scalars)
        with pytest.raises(SchemaViolation):
            load_record(json.dumps(obj))


def test_word_count_cases():
    assert word_count("") == 0
    assert word_count("hello   world\n") == 2
    assert word_count("a-b c") == 2


def test_word_count_concatenation():
    rng = random.Random(3)
    words = ["alpha", "b-c", "x1", "Zed"]
    for _ in range(100):
        a = " ".join(rng.choices(words, k=rng.randrange(1, 6)))
        b = " ".join(rng.choices(words, k=rng.randrange(1, 6)))
        assert word_count(a + " " + b) == word_count(a) + word_count(b)


def test_corpus_jsonl_loads(tmp_path):
    from reviewkit.corpus import load_corpus
    text = corpus_jsonl(dataset_corpus())
    records = load_corpus(text.splitlines())
    assert len(records) == 12
