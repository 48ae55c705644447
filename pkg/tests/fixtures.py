"""Deterministic fixture builders shared across the test suite.

Counts asserted in the tests were derived by hand from these
construction rules, not by running the code under test.
"""

from __future__ import annotations

import json

from reviewkit.corpus import (
    ManuscriptDoc,
    PaperRecord,
    RebuttalLetter,
    ReviewComment,
    ReviewRound,
)


def filler(tag: str, n_words: int) -> str:
    """Exactly n_words words (n_words % 10 == 0) of neutral prose:
    no questions, proposals, imperative openers, or filter triggers."""
    assert n_words % 10 == 0
    sentences = []
    for i in range(n_words // 10):
        sentences.append(
            f"Aspect {i} of {tag} shows steady agreement in trial {i}."
        )
    return " ".join(sentences)


# --- 12-paper dataset fixture --------------------------------------------------
#
# Hand-derived pair counts (one record per paper):
#   basic  11  (paper p00 has no summary-class sections -> empty source)
#   ef     12
#   ques    7  (papers p00..p06 contain one question sentence)
#   propos  9  (papers p00..p08 contain one keyword proposal)
#   addl   10  (papers p10, p11 have empty additional comments)
#   whole  12
# => emitted 61, dropped 11, emitted + dropped = 6 * 12.

DATASET_COUNTS = {"basic": 11, "ef": 12, "ques": 7, "propos": 9,
                  "addl": 10, "whole": 12}


def _manuscript(paper: str, with_summary: bool) -> ManuscriptDoc:
    if with_summary:
        sections = [
            ("Abstract", filler(f"{paper}-abs", 200)),
            ("Introduction", filler(f"{paper}-intro", 300)),
            ("Methods", filler(f"{paper}-methods", 600)),
            ("Results", filler(f"{paper}-results", 500)),
            ("Discussion", filler(f"{paper}-disc", 300)),
            ("Conclusion", filler(f"{paper}-conc", 150 + 50)),
        ]
    else:
        sections = [
            ("Methods", filler(f"{paper}-methods", 900)),
            ("Results", filler(f"{paper}-results", 700)),
            ("Appendix", filler(f"{paper}-app", 500)),
        ]
    return ManuscriptDoc(version=1, sections=sections)


def _review(paper_index: int, paper: str) -> ReviewComment:
    basic = filler(f"{paper}-rb", 40)
    design = filler(f"{paper}-rd", 40)
    validity = filler(f"{paper}-rv", 40)
    if paper_index <= 8:
        design += f" I suggest reporting variance estimates for condition {paper_index}."
    if paper_index <= 6:
        validity += f" What explains anomaly {paper_index} in the held out evaluation?"
    additional = "" if paper_index >= 10 else filler(f"{paper}-ra", 20)
    return ReviewComment(
        reviewer_label="R1",
        basic_reporting=basic,
        experimental_design=design,
        validity_of_findings=validity,
        additional_comments=additional,
    )


def dataset_corpus() -> list[PaperRecord]:
    """Twelve papers, each with one round-1 review on manuscript v1."""
    papers = []
    for i in range(12):
        paper_id = f"p{i:02d}"
        papers.append(PaperRecord(
            paper_id=paper_id,
            title=f"Study {i}",
            disciplines={"biology"},
            manuscripts=[_manuscript(paper_id, with_summary=(i != 0))],
            review_rounds=[ReviewRound(
                round_index=1,
                manuscript_version=1,
                reviews=[_review(i, paper_id)],
            )],
        ))
    return papers


def corpus_jsonl(records) -> str:
    from reviewkit.corpus import dump_record
    return "\n".join(json.dumps(dump_record(r)) for r in records) + "\n"


# --- 3-paper statistics fixture -------------------------------------------------
#
# Hand arithmetic:
#   totals: 3 papers, 6 review comments, 3 rebuttal letters
#   mean rounds            (2 + 3 + 4) / 3           = 3.0
#   mean reviewers         (2 + 1 + 1) / 3           = 4/3
#   mean v1 words          (100 + 110 + 120) / 3     = 110.0
#   mean v2 words          (200 + 190) / 2           = 195.0
#   mean v1 review words   (50 + 70 + 60 + 80) / 4   = 65.0
#   mean v2 review words   (30 + 40) / 2             = 35.0
#   mean meta words        (20 + 10 + 30 + 40 + 50) / 5 = 30.0
#   histogram              biology 2, computer science 1, environment 1

def _words(n: int) -> str:
    return " ".join(f"w{i}" for i in range(n))


def _doc(version: int, n_words: int) -> ManuscriptDoc:
    return ManuscriptDoc(version=version, sections=[("Body", _words(n_words))])


def _simple_review(reviewer: str, n_words: int) -> ReviewComment:
    return ReviewComment(reviewer_label=reviewer, basic_reporting=_words(n_words))


def stats_corpus() -> list[PaperRecord]:
    p1 = PaperRecord(
        paper_id="s1",
        disciplines={"biology"},
        manuscripts=[_doc(1, 100), _doc(2, 200)],
        review_rounds=[
            ReviewRound(1, 1, [_simple_review("A", 50), _simple_review("B", 70)],
                        meta_review=_words(20)),
            ReviewRound(2, 2, [_simple_review("A", 30)]),
        ],
        rebuttals=[RebuttalLetter(1, "thanks")],
    )
    p2 = PaperRecord(
        paper_id="s2",
        disciplines={"biology", "computer science"},
        manuscripts=[_doc(1, 110), _doc(2, 190)],
        review_rounds=[
            ReviewRound(1, 1, [_simple_review("C", 60)]),
            ReviewRound(2, 2, [_simple_review("C", 40)]),
            ReviewRound(3, 2, [], meta_review=_words(10)),
        ],
        rebuttals=[RebuttalLetter(1, "reply one"), RebuttalLetter(2, "reply two")],
    )
    p3 = PaperRecord(
        paper_id="s3",
        disciplines={"environment"},
        manuscripts=[_doc(1, 120)],
        review_rounds=[
            ReviewRound(1, 1, [_simple_review("D", 80)]),
            ReviewRound(2, 1, [], meta_review=_words(30)),
            ReviewRound(3, 1, [], meta_review=_words(40)),
            ReviewRound(4, 1, [], meta_review=_words(50)),
        ],
    )
    return [p1, p2, p3]


# --- 40-sentence hand-labeled review fixture ------------------------------------
#
# Gold labels were assigned by hand from the labeling rules before the
# labeler existed; the lists below are frozen.

LABELED_SEGMENTS = {
    "basic_reporting": [
        "The manuscript is generally well written.",
        "Figure 2 is blurry and hard to read.",
        "Is the introduction missing a motivation paragraph?",
        "Clarify the contribution in the abstract.",
        "The related work coverage is adequate.",
        "I suggest shortening the background section.",
        "The stable isotope data are described clearly.",
        "This reads like it was written for PeerJ specifically.",
        "References are formatted consistently.",
        "Why are the definitions deferred to the appendix?",
    ],
    "experimental_design": [
        "The experimental design is sound overall.",
        "Table 3 lacks standard deviations.",
        "Describe the data splits in more detail.",
        "How many random seeds were used?",
        "The authors should report confidence intervals.",
        "Sampling procedures follow standard practice.",
        "Should the controls include a placebo group?",
        "The power analysis ought to be rerun with the final sample.",
        "Randomization is explained adequately.",
        "What is the rationale for the chosen batch size?",
    ],
    "validity_of_findings": [
        "The conclusions follow from the data presented.",
        "See fig. 4 for a counterexample to this claim.",
        "Recompute the effect sizes with the corrected data.",
        "Are the improvements statistically significant?",
        "I recommend a sensitivity analysis for the main result.",
        "The claims about generality feel overstated.",
        "Replication materials are provided.",
        "My recommendation is to temper the causal language.",
        "Could the observed gains be due to data leakage?",
        "Error bars overlap in several comparisons.",
    ],
    "additional_comments": [
        "Thanks for an enjoyable read.",
        "Consider releasing the preprocessing scripts.",
        "A table of notation would help newcomers.",
        "Will the dataset be archived publicly?",
        "The acknowledgements mention internal reviewers.",
        "PeerJ readers may find section five too dense.",
        "Report the total compute budget.",
        "It ought to be possible to merge sections six and seven.",
        "Some typos remain in the appendix.",
        "Shouldn't the limitations section come before the conclusion?",
    ],
}

GOLD_REMOVED = [
    ("Figure 2 is blurry and hard to read.", "FigureTable"),
    ("This reads like it was written for PeerJ specifically.", "PeerJ"),
    ("Table 3 lacks standard deviations.", "FigureTable"),
    ("See fig. 4 for a counterexample to this claim.", "FigureTable"),
    ("A table of notation would help newcomers.", "FigureTable"),
    ("PeerJ readers may find section five too dense.", "PeerJ"),
]

GOLD_QUESTIONS = [
    "Is the introduction missing a motivation paragraph?",
    "Why are the definitions deferred to the appendix?",
    "How many random seeds were used?",
    "Should the controls include a placebo group?",
    "What is the rationale for the chosen batch size?",
    "Are the improvements statistically significant?",
    "Could the observed gains be due to data leakage?",
    "Will the dataset be archived publicly?",
    "Shouldn't the limitations section come before the conclusion?",
]

GOLD_PROPOSALS = [
    "Clarify the contribution in the abstract.",
    "I suggest shortening the background section.",
    "Describe the data splits in more detail.",
    "The authors should report confidence intervals.",
    "The power analysis ought to be rerun with the final sample.",
    "Recompute the effect sizes with the corrected data.",
    "I recommend a sensitivity analysis for the main result.",
    "My recommendation is to temper the causal language.",
    "Consider releasing the preprocessing scripts.",
    "Report the total compute budget.",
    "It ought to be possible to merge sections six and seven.",
]


def labeled_review() -> ReviewComment:
    return ReviewComment(
        reviewer_label="gold",
        basic_reporting=" ".join(LABELED_SEGMENTS["basic_reporting"]),
        experimental_design=" ".join(LABELED_SEGMENTS["experimental_design"]),
        validity_of_findings=" ".join(LABELED_SEGMENTS["validity_of_findings"]),
        additional_comments=" ".join(LABELED_SEGMENTS["additional_comments"]),
    )


# --- generation fixture manuscript ----------------------------------------------
# Distinct sentences (no shared trigrams) so the extractive baseline can
# keep several of them per module.

GENERATION_MANUSCRIPT = ManuscriptDoc(version=1, sections=[
    ("Abstract", "Wetland microbial diversity responds to seasonal flooding. "
                 "Our survey spans twelve sites over three years. "
                 "Community composition shifts with water depth."),
    ("Introduction", "Prior field studies examined only single seasons. "
                     "Long term monitoring remains rare in this habitat. "
                     "This work fills that observational gap."),
    ("Methods", "Samples were collected monthly from fixed plots. "
                "Sequencing used standard amplicon protocols throughout. "
                "Mixed effects regressions relate depth to diversity."),
    ("Results", "Richness peaks during early spring inundation. "
                "Depth explains most variance among plots. "
                "Drought years flatten the seasonal signal."),
    ("Conclusion", "Seasonal hydrology structures these communities. "
                   "Future campaigns ought to target drought recovery."),
])


def generation_manuscript_tei() -> str:
    divs = []
    abstract = ""
    for title, body in GENERATION_MANUSCRIPT.sections:
        paragraphs = "".join(f"<p>{body}</p>" for body in [body])
        if title == "Abstract":
            abstract = f"<abstract>{paragraphs}</abstract>"
        else:
            divs.append(f"<div><head>{title}</head>{paragraphs}</div>")
    return (
        '<TEI xmlns="http://www.tei-c.org/ns/1.0"><teiHeader/>'
        f"<text><front>{abstract}</front><body>{''.join(divs)}</body></text></TEI>"
    )


# --- 50-record evaluation fixture ------------------------------------------------

def evaluation_records(n: int = 50) -> list[tuple[ManuscriptDoc, str]]:
    """(manuscript, reference review) pairs for end-to-end evaluation."""
    pairs = []
    for i in range(n):
        doc = ManuscriptDoc(version=1, sections=[
            ("Abstract", filler(f"e{i}-abs", 30)),
            ("Methods", filler(f"e{i}-met", 40)),
            ("Results", filler(f"e{i}-res", 40)),
            ("Notes", filler(f"e{i}-not", 20)),
        ])
        reference = (
            f"The study of aspect {i} is sound. "
            f"Trial {i} agreement looks steady across conditions. "
            f"Some details of protocol {i} deserve elaboration."
        )
        pairs.append((doc, reference))
    return pairs
