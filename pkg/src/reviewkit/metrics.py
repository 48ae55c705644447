"""Overlap metrics for comparing generated reviews against references.

Implements unigram/bigram (and general n-gram) overlap, longest common
subsequence, and the summary-level union-LCS variant, plus corpus-level
aggregation into a comparison report. Tokenization is lowercase
alphanumeric with no stemming.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptyEvaluation
from .labeler import split_sentences

_TOKEN_SPLIT = re.compile(r"[^0-9a-z]+")


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float


def _score(precision: float, recall: float) -> RougeScore:
    denom = precision + recall
    f1 = 2 * precision * recall / denom if denom > 0 else 0.0
    return RougeScore(precision=precision, recall=recall, f1=f1)


_ZERO = RougeScore(0.0, 0.0, 0.0)


def tokenize_for_rouge(text: str) -> list[str]:
    """Lowercase, split on non-alphanumeric runs, drop empty tokens."""
    return [t for t in _TOKEN_SPLIT.split(text.lower()) if t]


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(candidate: str, reference: str, n: int = 1) -> RougeScore:
    """N-gram overlap with clipped (multiset) counts."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cand = _ngrams(tokenize_for_rouge(candidate), n)
    ref = _ngrams(tokenize_for_rouge(reference), n)
    cand_total = sum(cand.values())
    ref_total = sum(ref.values())
    if cand_total == 0 or ref_total == 0:
        return _ZERO
    overlap = sum(min(count, ref[gram]) for gram, count in cand.items())
    return _score(overlap / cand_total, overlap / ref_total)


def _lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        row = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                row.append(prev[j - 1] + 1)
            else:
                row.append(max(prev[j], row[-1]))
        prev = row
    return prev[-1]


def rouge_l(candidate: str, reference: str) -> RougeScore:
    """LCS-based score over the full token sequences."""
    cand = tokenize_for_rouge(candidate)
    ref = tokenize_for_rouge(reference)
    if not cand or not ref:
        return _ZERO
    lcs = _lcs_length(cand, ref)
    return _score(lcs / len(cand), lcs / len(ref))


def _lcs_indices(ref: Sequence[str], cand: Sequence[str]) -> list[int]:
    """Reference-side indices of the leftmost maximum-length common
    subsequence (the lexicographically smallest index set)."""
    if not ref or not cand:
        return []
    m, n = len(ref), len(cand)
    # table[i][j] = LCS length of ref[i:] vs cand[j:]
    table = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        for j in range(n - 1, -1, -1):
            if ref[i] == cand[j]:
                table[i][j] = table[i + 1][j + 1] + 1
            else:
                table[i][j] = max(table[i + 1][j], table[i][j + 1])
    out: list[int] = []
    i = j = 0
    remaining = table[0][0]
    while remaining > 0 and i < m:
        jj = j
        while jj < n and cand[jj] != ref[i]:
            jj += 1
        if jj < n and table[i][jj] == remaining:
            out.append(i)
            i += 1
            j = jj + 1
            remaining -= 1
        else:
            i += 1
    return out


def _sentence_tokens(text: str) -> list[list[str]]:
    sents = [tokenize_for_rouge(s) for s in split_sentences(text)]
    return [s for s in sents if s]


def rouge_lsum(candidate: str, reference: str) -> RougeScore:
    """Summary-level LCS: per reference sentence, the union of LCS token
    positions against every candidate sentence, credited with clipping
    against both texts' token counts."""
    ref_sents = _sentence_tokens(reference)
    cand_sents = _sentence_tokens(candidate)
    ref_total = sum(len(s) for s in ref_sents)
    cand_total = sum(len(s) for s in cand_sents)
    if ref_total == 0 or cand_total == 0:
        return _ZERO
    ref_counts = Counter(t for s in ref_sents for t in s)
    cand_counts = Counter(t for s in cand_sents for t in s)
    hits = 0
    for ref_sent in ref_sents:
        union: set[int] = set()
        for cand_sent in cand_sents:
            union.update(_lcs_indices(ref_sent, cand_sent))
        for idx in sorted(union):
            token = ref_sent[idx]
            if ref_counts[token] > 0 and cand_counts[token] > 0:
                hits += 1
                ref_counts[token] -= 1
                cand_counts[token] -= 1
    return _score(hits / cand_total, hits / ref_total)


# --- corpus-level aggregation ------------------------------------------------

METRIC_NAMES = ("rouge1", "rouge2", "rougeL", "rougeLsum")


@dataclass(frozen=True)
class MethodScores:
    """Mean F1 x 100 per metric, rounded to two decimals."""

    rouge1: float
    rouge2: float
    rougeL: float
    rougeLsum: float
    samples: int


@dataclass
class EvalReport:
    methods: dict[str, MethodScores]


def evaluate_corpus(pairs: Iterable[tuple[str, str]],
                    method: str = "default") -> EvalReport:
    """Score (candidate, reference) pairs and average the F1 values."""
    sums = dict.fromkeys(METRIC_NAMES, 0.0)
    count = 0
    for candidate, reference in pairs:
        sums["rouge1"] += rouge_n(candidate, reference, 1).f1
        sums["rouge2"] += rouge_n(candidate, reference, 2).f1
        sums["rougeL"] += rouge_l(candidate, reference).f1
        sums["rougeLsum"] += rouge_lsum(candidate, reference).f1
        count += 1
    if count == 0:
        raise EmptyEvaluation("no candidate/reference pairs to evaluate")
    scores = MethodScores(
        **{name: round(sums[name] * 100 / count, 2) for name in METRIC_NAMES},
        samples=count,
    )
    return EvalReport(methods={method: scores})


def merge_reports(reports: Iterable[EvalReport]) -> EvalReport:
    merged: dict[str, MethodScores] = {}
    for report in reports:
        merged.update(report.methods)
    return EvalReport(methods=merged)


def render_report(report: EvalReport) -> str:
    """Aligned plain-text comparison table, one row per method."""
    headers = ["Method", "ROUGE-1", "ROUGE-2", "ROUGE-L", "ROUGE-Lsum", "Samples"]
    rows = [
        [name, f"{s.rouge1:.2f}", f"{s.rouge2:.2f}", f"{s.rougeL:.2f}",
         f"{s.rougeLsum:.2f}", str(s.samples)]
        for name, s in report.methods.items()
    ]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    def fmt(row):
        return "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
    return "\n".join([fmt(headers)] + [fmt(r) for r in rows])


def report_to_dict(report: EvalReport) -> dict:
    return {
        name: {
            "rouge1": s.rouge1, "rouge2": s.rouge2, "rougeL": s.rougeL,
            "rougeLsum": s.rougeLsum, "samples": s.samples,
        }
        for name, s in report.methods.items()
    }
