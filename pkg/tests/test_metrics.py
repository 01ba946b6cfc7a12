"""Evaluation arithmetic: F1 bookkeeping and the cross-validation harness.

The constructed confusion fixture (30 items, 10 per class):

              predicted
    truth     A    B    C
      A       8    1    1
      B       2    6    2
      C       0    2    8

    F1(A) = 4/5      (precision 8/10, recall 8/10)
    F1(B) = 12/19    (precision 6/9,  recall 6/10)
    F1(C) = 16/21    (precision 8/11, recall 8/10)
    micro F1 = accuracy = 22/30
    macro F1 = (4/5 + 12/19 + 16/21) / 3 = 4376/5985
"""

from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from archive_recommender.metrics import (
    UNCLASSIFIED,
    cross_validate,
    majority_baseline,
    score_predictions,
)
from archive_recommender.uri import TokenMethod, TokenVariant

TOL = 1e-9

CONFUSION_PAIRS = (
    [("A", "A")] * 8 + [("A", "B")] * 1 + [("A", "C")] * 1
    + [("B", "A")] * 2 + [("B", "B")] * 6 + [("B", "C")] * 2
    + [("C", "B")] * 2 + [("C", "C")] * 8
)


class TestScorePredictions:
    def test_per_class_f1(self):
        report = score_predictions(CONFUSION_PAIRS)
        assert report.per_class["A"].f1 == pytest.approx(4 / 5, abs=TOL)
        assert report.per_class["B"].f1 == pytest.approx(12 / 19, abs=TOL)
        assert report.per_class["C"].f1 == pytest.approx(16 / 21, abs=TOL)

    def test_precision_recall_support(self):
        report = score_predictions(CONFUSION_PAIRS)
        b = report.per_class["B"]
        assert b.precision == pytest.approx(6 / 9, abs=TOL)
        assert b.recall == pytest.approx(6 / 10, abs=TOL)
        assert b.support == 10
        assert (b.tp, b.fp, b.fn) == (6, 3, 4)

    def test_micro_macro_weighted(self):
        report = score_predictions(CONFUSION_PAIRS)
        assert report.micro_f1 == pytest.approx(22 / 30, abs=TOL)
        assert report.accuracy == pytest.approx(22 / 30, abs=TOL)
        assert report.macro_f1 == pytest.approx(4376 / 5985, abs=TOL)
        # equal supports make the weighted mean equal the macro mean
        assert report.weighted_f1 == pytest.approx(report.macro_f1, abs=TOL)

    def test_confusion_counts(self):
        report = score_predictions(CONFUSION_PAIRS)
        assert report.confusion[("A", "A")] == 8
        assert report.confusion[("B", "C")] == 2
        assert ("C", "A") not in report.confusion
        assert report.evaluated == 30

    def test_none_prediction_penalizes_truth_only(self):
        report = score_predictions([("A", "A"), ("A", None), ("B", "B")])
        a = report.per_class["A"]
        assert (a.tp, a.fp, a.fn) == (1, 0, 1)
        assert UNCLASSIFIED not in report.per_class
        assert report.confusion[("A", UNCLASSIFIED)] == 1
        # unclassified items drag micro F1 below accuracy-of-attempted
        assert report.micro_f1 == pytest.approx(2 * (2 / 2) * (2 / 3) / (2 / 2 + 2 / 3), abs=TOL)

    def test_empty_input(self):
        report = score_predictions([])
        assert report.evaluated == 0
        assert report.micro_f1 == 0.0
        assert report.macro_f1 == 0.0

    def test_report_serialization(self):
        report = score_predictions(CONFUSION_PAIRS)
        records = report.to_records()
        assert [r["key"] for r in records if r["section"] == "class"] == ["A", "B", "C"]
        summary = next(r for r in records if r["section"] == "summary")
        assert summary["micro_f1"] == round(22 / 30, 4)
        assert "micro F1" in report.to_table()


@given(
    st.lists(
        st.tuples(st.sampled_from("ABCD"), st.sampled_from("ABCD")),
        min_size=1,
        max_size=60,
    )
)
def test_micro_f1_equals_accuracy_on_single_label_data(pairs):
    """With exactly one prediction per item, pooled FP == pooled FN, so
    micro precision == micro recall == accuracy."""
    report = score_predictions(pairs)
    accuracy = sum(1 for t, p in pairs if t == p) / len(pairs)
    assert report.micro_f1 == pytest.approx(accuracy, abs=TOL)


def test_micro_f1_equals_accuracy_on_100_random_sets():
    rng = random.Random(404)
    for _ in range(100):
        labels = [rng.choice("ABCDE") for _ in range(rng.randint(1, 200))]
        predictions = [rng.choice("ABCDE") for _ in labels]
        report = score_predictions(list(zip(labels, predictions)))
        accuracy = sum(1 for t, p in zip(labels, predictions) if t == p) / len(labels)
        assert report.micro_f1 == pytest.approx(accuracy, abs=TOL)


class TestMajorityBaseline:
    def test_fraction_of_most_common(self):
        assert majority_baseline(["A", "A", "A", "B"]) == pytest.approx(0.75)
        assert majority_baseline(["A", "B"]) == pytest.approx(0.5)

    def test_empty(self):
        assert majority_baseline([]) == 0.0


class TestCrossValidate:
    # Two URI families with disjoint token vocabularies; tokens repeat across
    # items so the unseen-feature filter keeps most of the test slices.
    CORPUS = [
        (f"http://alphasite{i}.com/alpha/page{i}", "Computers") for i in range(12)
    ] + [
        (f"http://betasite{i}.org/beta/story{i}", "Sports") for i in range(12)
    ]

    def test_separable_corpus_scores_perfectly(self):
        report = cross_validate(self.CORPUS, TokenMethod.TOKENS,
                                {TokenVariant.STRIP_NUMBERS}, folds=4)
        assert report.micro_f1 == pytest.approx(1.0)
        assert report.evaluated + report.filtered_out == len(self.CORPUS)
        assert report.filtered_out == 0
        assert len(report.folds) == 4

    def test_fold_assignment_is_round_robin(self):
        report = cross_validate(self.CORPUS, TokenMethod.TOKENS,
                                {TokenVariant.STRIP_NUMBERS}, folds=4)
        for fold in report.folds:
            assert fold.train_size == 18
            assert fold.tested == 6

    def test_deterministic(self):
        kwargs = dict(folds=5, smoothing=0.5)
        a = cross_validate(self.CORPUS, TokenMethod.ALL_GRAMS_URI,
                           {TokenVariant.STRIP_NUMBERS}, **kwargs)
        b = cross_validate(self.CORPUS, TokenMethod.ALL_GRAMS_URI,
                           {TokenVariant.STRIP_NUMBERS}, **kwargs)
        assert a.micro_f1 == b.micro_f1
        assert a.confusion == b.confusion

    def test_unseen_feature_filter(self):
        # one URI holds a token that appears nowhere else: whichever fold
        # tests it must filter it out rather than guess
        corpus = self.CORPUS + [("http://zzyzxuniq.net/qwwqz", "Computers")]
        report = cross_validate(corpus, TokenMethod.TOKENS,
                                {TokenVariant.STRIP_NUMBERS}, folds=5)
        assert report.filtered_out >= 1
        assert report.evaluated + report.filtered_out == len(corpus)

    def test_guards(self):
        with pytest.raises(ValueError):
            cross_validate(self.CORPUS, TokenMethod.TOKENS, folds=1)
        with pytest.raises(ValueError):
            cross_validate(self.CORPUS[:3], TokenMethod.TOKENS, folds=10)
