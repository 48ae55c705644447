"""Deterministic extractive generator used as the built-in backend.

A stand-in for fine-tuned neural generators: it scores source sentences
by position and keyword salience, selects greedily within the token
budget, and enforces the no-repeat-ngram constraint exactly, so the
full pipeline runs (and is testable) with no model weights.
"""

from __future__ import annotations

import re
from collections import Counter
from typing import Sequence

from ..labeler import split_sentences
from .params import GenerationParams

_WORD = re.compile(r"[0-9a-z]+")

_STOPWORDS = frozenset(
    "a an the and or but of to in for on with at by from as is are was were "
    "be been being this that these those it its we our they their i you not "
    "which who whom whose what when where how why can could may might will "
    "would shall should must do does did done has have had if then than so "
    "such no nor only own same too very s t just don now".split()
)


def _words(text: str) -> list[str]:
    return _WORD.findall(text.lower())


def has_repeated_ngram(tokens: Sequence[str], n: int) -> bool:
    """Exact scan: does any n-gram of whitespace tokens occur twice?"""
    grams = [tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]
    return len(grams) != len(set(grams))


def _sentence_scores(sentences: list[str]) -> list[float]:
    freq = Counter(w for s in sentences for w in _words(s) if w not in _STOPWORDS)
    scores = []
    for index, sentence in enumerate(sentences):
        content = [w for w in _words(sentence) if w not in _STOPWORDS]
        salience = sum(freq[w] for w in content) / len(content) if content else 0.0
        scores.append(salience + 1.0 / (1.0 + index))
    return scores


def baseline_generate(prefix: str, source: str, params: GenerationParams) -> str:
    """Extract up to max_new_tokens source tokens behind the prefix.

    Sentences are ranked by salience+position and added greedily in
    document order; any sentence that would exceed the budget or
    introduce a repeated n-gram of the configured size (prefix included
    in the check) is skipped. Output is a pure function of the inputs;
    an empty source yields the prefix alone.
    """
    sentences = split_sentences(source)
    prefix_tokens = prefix.split()
    if not sentences:
        return prefix
    scores = _sentence_scores(sentences)
    ranked = sorted(range(len(sentences)), key=lambda i: (-scores[i], i))
    n = params.no_repeat_ngram_size
    budget = params.max_new_tokens

    selected: list[int] = []
    used = 0
    for index in ranked:
        count = len(sentences[index].split())
        if used + count > budget:
            continue
        trial = sorted(selected + [index])
        tokens = prefix_tokens + [t for k in trial for t in sentences[k].split()]
        if has_repeated_ngram(tokens, n):
            continue
        selected = trial
        used += count

    if not selected:
        # No whole sentence fits cleanly: truncate the best-ranked one.
        tokens = sentences[ranked[0]].split()[:budget]
        while tokens and has_repeated_ngram(prefix_tokens + tokens, n):
            tokens.pop()
        body = " ".join(tokens)
    else:
        body = " ".join(sentences[k] for k in selected)

    if prefix and body:
        return f"{prefix} {body}"
    return prefix or body
