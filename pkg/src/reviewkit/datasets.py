"""Fine-tuning dataset assembly, record filtering, splits, and corpus stats.

A record is one (initial-submission manuscript, review comment) pair.
Each record yields up to six (source, target) pairs, one per generation
module; pairs with an empty side are dropped and counted.
"""

from __future__ import annotations

import enum
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .corpus import ManuscriptDoc, PaperRecord, ReviewComment, word_count
from .errors import TooFewRecords
from .labeler import PosTagger, filter_review_sentences, label_review
from .sectioner import TitleClassifier, segment_manuscript

DEFAULT_MIN_MANUSCRIPT_WORDS = 2000
DEFAULT_MIN_REVIEW_WORDS = 100
DEFAULT_RATIOS = (8, 1, 1)


class Module(enum.Enum):
    BASIC = "basic"
    EF = "ef"
    QUES = "ques"
    PROPOS = "propos"
    ADDL = "addl"
    WHOLE = "whole"


RecordKey = tuple[str, str]


@dataclass
class RecordPair:
    """One manuscript/review-comment record, keyed (paper_id, reviewer)."""

    paper_id: str
    reviewer: str
    manuscript: ManuscriptDoc
    review: ReviewComment

    @property
    def key(self) -> RecordKey:
        return (self.paper_id, self.reviewer)


@dataclass
class FinetunePair:
    paper_id: str
    reviewer: str
    module: Module
    source: str
    target: str


@dataclass
class FinetuneDataset:
    module: Module
    pairs: list[FinetunePair] = field(default_factory=list)
    dropped: int = 0


@dataclass
class SplitDataset:
    train: list[RecordKey]
    validation: list[RecordKey]
    test: list[RecordKey]
    seed: int
    ratios: tuple[int, int, int]


def filter_records(corpus: Iterable[PaperRecord],
                   min_manuscript_words: int = DEFAULT_MIN_MANUSCRIPT_WORDS,
                   min_review_words: int = DEFAULT_MIN_REVIEW_WORDS) -> list[RecordPair]:
    """Select (v1 manuscript, review) records passing the length filters.

    Only rounds reviewing manuscript version 1 contribute. Thresholds are
    inclusive; review length is measured on the whole comment after the
    figure/table/venue sentence filter. Reviews without a reviewer label
    get a deterministic positional one.
    """
    records: list[RecordPair] = []
    for paper in corpus:
        manuscript = paper.manuscript(1)
        if manuscript is None or manuscript.word_count < min_manuscript_words:
            continue
        for rnd in paper.review_rounds:
            if rnd.manuscript_version != 1:
                continue
            for i, review in enumerate(rnd.reviews):
                kept_words = sum(
                    word_count(filter_review_sentences(text)[0])
                    for _, text in review.segments()
                )
                if kept_words < min_review_words:
                    continue
                reviewer = review.reviewer_label or f"r{rnd.round_index}-{i + 1}"
                records.append(RecordPair(paper.paper_id, reviewer, manuscript, review))
    return records


def build_finetune_corpus(records: Sequence[RecordPair],
                          classifier: TitleClassifier,
                          tagger: PosTagger,
                          keywords: Sequence[str] | None = None,
                          ) -> dict[Module, FinetuneDataset]:
    """Assemble the per-module (source, target) pair sets.

    Sources: the summary subset for BASIC, the methods/results subset for
    EF, the full text for the rest. Targets are the filtered review
    segments (QUES/PROPOS targets join their sentences with spaces).
    Pairs with an empty source or target are dropped and counted, so
    emitted + dropped = 6 x len(records).
    """
    datasets = {module: FinetuneDataset(module=module) for module in Module}
    for record in records:
        segments = segment_manuscript(record.manuscript, classifier)
        labeled = label_review(record.review, tagger, keywords)
        basic_target, _ = filter_review_sentences(record.review.basic_reporting)
        addl_target, _ = filter_review_sentences(record.review.additional_comments)
        candidates = [
            (Module.BASIC, segments.t_sum, basic_target),
            (Module.EF, segments.t_mr, labeled.ef),
            (Module.QUES, segments.t_full, " ".join(labeled.questions)),
            (Module.PROPOS, segments.t_full, " ".join(labeled.proposals)),
            (Module.ADDL, segments.t_full, addl_target),
            (Module.WHOLE, segments.t_full, labeled.whole),
        ]
        for module, source, target in candidates:
            if source.strip() and target.strip():
                datasets[module].pairs.append(FinetunePair(
                    paper_id=record.paper_id,
                    reviewer=record.reviewer,
                    module=module,
                    source=source,
                    target=target,
                ))
            else:
                datasets[module].dropped += 1
    return datasets


def split(records: Sequence[RecordPair | RecordKey], seed: int,
          ratios: tuple[int, int, int] = DEFAULT_RATIOS) -> SplitDataset:
    """Deterministic shuffled split into train/validation/test.

    Keys are sorted, shuffled with the seed, then the first
    floor(N * test/total) go to test, the next floor(N * validation/total)
    to validation, and the remainder to train.
    """
    keys = [r.key if isinstance(r, RecordPair) else (r[0], r[1]) for r in records]
    n = len(keys)
    if n < 10:
        raise TooFewRecords(f"need at least 10 records to split, got {n}")
    train_ratio, validation_ratio, test_ratio = ratios
    total = train_ratio + validation_ratio + test_ratio
    keys.sort()
    random.Random(seed).shuffle(keys)
    n_test = n * test_ratio // total
    n_validation = n * validation_ratio // total
    return SplitDataset(
        train=keys[n_test + n_validation:],
        validation=keys[n_test : n_test + n_validation],
        test=keys[:n_test],
        seed=seed,
        ratios=ratios,
    )


# --- corpus statistics --------------------------------------------------------

@dataclass
class CorpusStats:
    total_papers: int
    total_review_comments: int
    total_rebuttals: int
    mean_review_rounds: float | None
    mean_reviewers_per_manuscript: float | None
    mean_v1_manuscript_words: float | None
    mean_v2_manuscript_words: float | None
    mean_v1_review_words_per_reviewer: float | None
    mean_v2_review_words_per_reviewer: float | None
    mean_meta_review_words: float | None
    discipline_histogram: dict[str, int]


def _mean(values: list[float]) -> float | None:
    return sum(values) / len(values) if values else None


def _review_words(review: ReviewComment) -> int:
    return sum(word_count(text) for _, text in review.segments())


def corpus_stats(corpus: Iterable[PaperRecord]) -> CorpusStats:
    """Exact totals and arithmetic means over the loaded corpus.

    v1/v2 rows cover manuscript versions 1 and 2 and the review rounds
    that reference them; means over missing populations report as absent
    rather than zero. The discipline histogram counts a paper once per
    discipline it belongs to.
    """
    total_papers = 0
    total_reviews = 0
    total_rebuttals = 0
    rounds_per_paper: list[float] = []
    reviewers_per_paper: list[float] = []
    v1_words: list[float] = []
    v2_words: list[float] = []
    v1_review_words: list[float] = []
    v2_review_words: list[float] = []
    meta_words: list[float] = []
    histogram: Counter = Counter()

    for paper in corpus:
        total_papers += 1
        rounds_per_paper.append(len(paper.review_rounds))
        histogram.update(paper.disciplines)
        labels = set()
        anonymous = 0
        for rnd in paper.review_rounds:
            total_reviews += len(rnd.reviews)
            if rnd.meta_review is not None:
                meta_words.append(word_count(rnd.meta_review))
            for review in rnd.reviews:
                if review.reviewer_label:
                    labels.add(review.reviewer_label)
                else:
                    anonymous += 1
            version = rnd.manuscript_version
            if version in (1, 2):
                bucket = v1_review_words if version == 1 else v2_review_words
                bucket.extend(_review_words(r) for r in rnd.reviews)
        reviewers_per_paper.append(len(labels) + anonymous)
        total_rebuttals += len(paper.rebuttals)
        for doc in paper.manuscripts:
            if doc.version == 1:
                v1_words.append(doc.word_count)
            elif doc.version == 2:
                v2_words.append(doc.word_count)

    return CorpusStats(
        total_papers=total_papers,
        total_review_comments=total_reviews,
        total_rebuttals=total_rebuttals,
        mean_review_rounds=_mean(rounds_per_paper),
        mean_reviewers_per_manuscript=_mean(reviewers_per_paper),
        mean_v1_manuscript_words=_mean(v1_words),
        mean_v2_manuscript_words=_mean(v2_words),
        mean_v1_review_words_per_reviewer=_mean(v1_review_words),
        mean_v2_review_words_per_reviewer=_mean(v2_review_words),
        mean_meta_review_words=_mean(meta_words),
        discipline_histogram=dict(sorted(histogram.items())),
    )


_STATS_ROWS = [
    ("Total papers", "total_papers"),
    ("Total review comments", "total_review_comments"),
    ("Total rebuttal letters", "total_rebuttals"),
    ("Mean review rounds per manuscript", "mean_review_rounds"),
    ("Mean reviewer number per manuscript", "mean_reviewers_per_manuscript"),
    ("Mean v1 manuscript word count", "mean_v1_manuscript_words"),
    ("Mean v2 manuscript word count", "mean_v2_manuscript_words"),
    ("Mean v1 review comment word count per reviewer", "mean_v1_review_words_per_reviewer"),
    ("Mean v2 review comment word count per reviewer", "mean_v2_review_words_per_reviewer"),
    ("Mean meta-review word count", "mean_meta_review_words"),
]


def render_stats(stats: CorpusStats) -> str:
    """Aligned two-column table; counts exact, means to one decimal."""
    lines = []
    width = max(len(label) for label, _ in _STATS_ROWS)
    for label, attr in _STATS_ROWS:
        value = getattr(stats, attr)
        if value is None:
            text = "-"
        elif isinstance(value, int):
            text = f"{value:,}"
        else:
            text = f"{value:,.1f}"
        lines.append(f"{label.ljust(width)}  {text}")
    if stats.discipline_histogram:
        lines.append("")
        lines.append("Papers per discipline")
        for name, count in stats.discipline_histogram.items():
            lines.append(f"  {name}: {count:,}")
    return "\n".join(lines)


def stats_to_dict(stats: CorpusStats) -> dict:
    return {
        "total_papers": stats.total_papers,
        "total_review_comments": stats.total_review_comments,
        "total_rebuttals": stats.total_rebuttals,
        "mean_review_rounds": stats.mean_review_rounds,
        "mean_reviewers_per_manuscript": stats.mean_reviewers_per_manuscript,
        "mean_v1_manuscript_words": stats.mean_v1_manuscript_words,
        "mean_v2_manuscript_words": stats.mean_v2_manuscript_words,
        "mean_v1_review_words_per_reviewer": stats.mean_v1_review_words_per_reviewer,
        "mean_v2_review_words_per_reviewer": stats.mean_v2_review_words_per_reviewer,
        "mean_meta_review_words": stats.mean_meta_review_words,
        "discipline_histogram": stats.discipline_histogram,
    }
