import math
import random

import pytest

from reviewkit.errors import EmptyEvaluation
from reviewkit.metrics import (
    evaluate_corpus,
    merge_reports,
    render_report,
    rouge_l,
    rouge_lsum,
    rouge_n,
    tokenize_for_rouge,
)

from oracles import (
    oracle_rouge_l,
    oracle_rouge_lsum,
    oracle_rouge_n,
    random_text,
)

VOCAB = ["a", "b", "c", "d", "e"]


def test_tokenize_cases():
    assert tokenize_for_rouge("The cat, sat!") == ["the", "cat", "sat"]
    assert tokenize_for_rouge("") == []
    assert tokenize_for_rouge("state-of-the-art") == ["state", "of", "the", "art"]


def test_rouge1_hand_case():
    score = rouge_n("the cat sat", "the cat", 1)
    assert score.recall == 1.0
    assert score.precision == pytest.approx(2 / 3)
    assert score.f1 == pytest.approx(0.8)


def test_rouge_identity():
    for text in ("same words here", "a", "x y z w"):
        assert rouge_n(text, text, 1).f1 == 1.0
        assert rouge_n(text, text, 2).f1 == (1.0 if len(text.split()) > 1 else 0.0)
        assert rouge_l(text, text).f1 == 1.0


def test_rouge_reference_shorter_than_n():
    assert rouge_n("one two three", "one", 2).f1 == 0.0


def test_rouge_l_hand_case():
    score = rouge_l("a b c d", "a c b d")
    assert score.precision == 0.75
    assert score.recall == 0.75
    assert score.f1 == 0.75


def test_rouge_l_disjoint():
    assert rouge_l("a b", "c d").f1 == 0.0


def test_rouge_lsum_degenerate_equals_rouge_l():
    cand, ref = "The model works well.", "The method works poorly."
    assert rouge_lsum(cand, ref) == rouge_l(cand, ref)


def test_rouge_lsum_identical_two_sentence_texts():
    text = "First point stands. Second point holds."
    assert rouge_lsum(text, text).f1 == 1.0


def test_clipping_limits_repeated_tokens():
    score = rouge_n("the the the the", "the cat", 1)
    assert score.recall == 0.5  # only one "the" may be credited
    assert score.precision == 0.25


def test_swap_exchanges_precision_and_recall():
    rng = random.Random(5)
    for _ in range(100):
        a = random_text(rng, VOCAB, 10)
        b = random_text(rng, VOCAB, 10)
        for fn in (lambda x, y: rouge_n(x, y, 1),
                   lambda x, y: rouge_n(x, y, 2),
                   rouge_l):
            ab, ba = fn(a, b), fn(b, a)
            assert ab.precision == pytest.approx(ba.recall, abs=1e-12)
            assert ab.recall == pytest.approx(ba.precision, abs=1e-12)


def test_duplication_never_decreases_recall():
    rng = random.Random(6)
    for _ in range(50):
        cand = random_text(rng, VOCAB, 8)
        ref = random_text(rng, VOCAB, 8)
        extended = cand + " " + ref
        for fn in (lambda x, y: rouge_n(x, y, 1),
                   lambda x, y: rouge_n(x, y, 2),
                   rouge_l):
            assert fn(extended, ref).recall >= fn(cand, ref).recall - 1e-12


def test_bounds_f1_le_max_pr():
    rng = random.Random(8)
    for _ in range(100):
        a = random_text(rng, VOCAB, 10)
        b = random_text(rng, VOCAB, 10)
        for score in (rouge_n(a, b, 1), rouge_n(a, b, 2), rouge_l(a, b),
                      rouge_lsum(a, b)):
            assert 0.0 <= score.f1 <= max(score.precision, score.recall) + 1e-12
            assert max(score.precision, score.recall) <= 1.0


def test_oracle_equivalence_small_batch():
    rng = random.Random(30)
    for _ in range(30):
        cand = random_text(rng, VOCAB[:4], 8)
        ref = random_text(rng, VOCAB[:4], 8)
        got = rouge_lsum(cand, ref)
        want = oracle_rouge_lsum(cand, ref)
        assert math.isclose(got.f1, want[2], abs_tol=1e-12)


def test_oracle_equivalence_all_metrics():
    rng = random.Random(31)
    for _ in range(200):
        cand = random_text(rng, VOCAB, 10)
        ref = random_text(rng, VOCAB, 10)
        for n in (1, 2):
            got = rouge_n(cand, ref, n)
            want = oracle_rouge_n(cand, ref, n)
            assert math.isclose(got.f1, want[2], abs_tol=1e-9)
        got_l = rouge_l(cand, ref)
        want_l = oracle_rouge_l(cand, ref)
        assert math.isclose(got_l.f1, want_l[2], abs_tol=1e-9)
        got_s = rouge_lsum(cand, ref)
        want_s = oracle_rouge_lsum(cand, ref)
        assert math.isclose(got_s.f1, want_s[2], abs_tol=1e-9)


def test_evaluate_corpus_identity_pair():
    report = evaluate_corpus([("same text here", "same text here")], method="m")
    scores = report.methods["m"]
    assert scores.rouge1 == scores.rouge2 == scores.rougeL == scores.rougeLsum == 100.0
    assert scores.samples == 1


def test_evaluate_corpus_mean():
    # hand-picked pairs with known ROUGE-1 F1 of 0.5 and 1.0
    pairs = [
        ("alpha beta", "alpha gamma"),   # overlap 1, P=R=0.5, F1=0.5
        ("delta", "delta"),
    ]
    report = evaluate_corpus(pairs, method="m")
    assert report.methods["m"].rouge1 == 75.0
    assert report.methods["m"].samples == 2


def test_evaluate_corpus_empty():
    with pytest.raises(EmptyEvaluation):
        evaluate_corpus([])


def test_evaluate_corpus_hand_aggregation():
    rng = random.Random(77)
    pairs = [(random_text(rng, VOCAB, 10), random_text(rng, VOCAB, 10))
             for _ in range(10)]
    report = evaluate_corpus(pairs, method="m")
    mean_r1 = sum(rouge_n(c, r, 1).f1 for c, r in pairs) / len(pairs)
    assert report.methods["m"].rouge1 == round(mean_r1 * 100, 2)


def test_render_report_and_merge():
    one = evaluate_corpus([("a b", "a b")], method="first")
    two = evaluate_corpus([("a b", "c d")], method="second")
    merged = merge_reports([one, two])
    table = render_report(merged)
    lines = table.splitlines()
    assert lines[0].startswith("Method")
    assert lines[1].startswith("first")
    assert lines[2].startswith("second")
    assert "100.00" in lines[1]
