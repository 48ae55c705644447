"""Peer-review corpus processing and modular guided review generation.

Pipeline stages: ingest manuscripts and review records, derive the
manuscript subsets, auto-label review sentences, assemble fine-tuning
datasets, orchestrate guided generation over a pluggable backend, and
evaluate candidates with overlap metrics.
"""

__version__ = "0.1.0"

from .corpus import (
    Decision,
    ManuscriptDoc,
    PaperRecord,
    RebuttalLetter,
    ReviewComment,
    ReviewRound,
    dump_record,
    load_corpus,
    load_record,
    parse_tei,
    word_count,
)
from .datasets import (
    CorpusStats,
    FinetuneDataset,
    FinetunePair,
    Module,
    RecordPair,
    SplitDataset,
    build_finetune_corpus,
    corpus_stats,
    filter_records,
    split,
)
from .labeler import (
    LabeledReview,
    LexiconPosTagger,
    PosTagger,
    RemovalReason,
    filter_review_sentences,
    is_imperative,
    is_proposal,
    is_question,
    label_review,
    split_sentences,
)
from .metrics import (
    EvalReport,
    RougeScore,
    evaluate_corpus,
    rouge_l,
    rouge_lsum,
    rouge_n,
    tokenize_for_rouge,
)
from .sectioner import (
    LexiconTitleClassifier,
    ManuscriptSegments,
    SectionClass,
    TitleClassifier,
    classify_section_title,
    segment_manuscript,
)
