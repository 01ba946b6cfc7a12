"""Add-one multinomial naive Bayes: hand-checked posteriors, log-space
robustness, and byte-stable persistence.

The toy corpus is ([x, y] -> A), ([x] -> A), ([y, z] -> B), so with add-1
smoothing over vocabulary {x, y, z}:

    priors        P(A) = 2/3            P(B) = 1/3
    likelihoods   P(x|A) = 3/6  P(y|A) = 2/6  P(z|A) = 1/6
                  P(x|B) = 1/5  P(y|B) = 2/5  P(z|B) = 2/5

    P(A | x y) = (2/3 * 1/2 * 1/3) / (2/3 * 1/2 * 1/3 + 1/3 * 1/5 * 2/5) = 25/31
    P(A | z)   = (2/3 * 1/6) / (2/3 * 1/6 + 1/3 * 2/5)                   = 5/11
    P(A | x)   = (2/3 * 1/2) / (2/3 * 1/2 + 1/3 * 1/5)                   = 5/6
"""

from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, strategies as st

from archive_recommender.nbayes import NaiveBayesModel, classify, load_model, save_model, train
from archive_recommender.uri import TokenMethod, TokenVariant, tokenize

TOY = [(["x", "y"], "A"), (["x"], "A"), (["y", "z"], "B")]
TOL = 1e-9


@pytest.fixture()
def toy_model():
    return train(TOY)


class TestHandChecked:
    def test_priors_and_likelihoods(self, toy_model):
        import math

        assert toy_model.classes == ("A", "B")
        assert toy_model.class_log_prior["A"] == pytest.approx(math.log(2 / 3), abs=TOL)
        assert toy_model.log_likelihood("A", "x") == pytest.approx(math.log(1 / 2), abs=TOL)
        assert toy_model.log_likelihood("A", "y") == pytest.approx(math.log(1 / 3), abs=TOL)
        assert toy_model.log_likelihood("A", "z") == pytest.approx(math.log(1 / 6), abs=TOL)
        assert toy_model.log_likelihood("B", "x") == pytest.approx(math.log(1 / 5), abs=TOL)
        assert toy_model.log_likelihood("B", "z") == pytest.approx(math.log(2 / 5), abs=TOL)

    def test_posterior_xy(self, toy_model):
        outcome = classify(toy_model, ["x", "y"])
        assert outcome.label == "A"
        posteriors = dict(outcome.posteriors)
        assert posteriors["A"] == pytest.approx(25 / 31, abs=TOL)
        assert posteriors["B"] == pytest.approx(6 / 31, abs=TOL)

    def test_posterior_z(self, toy_model):
        outcome = classify(toy_model, ["z"])
        assert outcome.label == "B"
        assert dict(outcome.posteriors)["A"] == pytest.approx(5 / 11, abs=TOL)

    def test_posterior_after_oov_drop(self, toy_model):
        outcome = classify(toy_model, ["x", "never-seen"])
        assert outcome.ignored_features == 1
        assert dict(outcome.posteriors)["A"] == pytest.approx(5 / 6, abs=TOL)

    def test_repeated_features_multiply(self, toy_model):
        outcome = classify(toy_model, ["z", "z"])
        # (2/3)(1/6)^2 vs (1/3)(2/5)^2
        a = (2 / 3) * (1 / 6) ** 2
        b = (1 / 3) * (2 / 5) ** 2
        assert dict(outcome.posteriors)["B"] == pytest.approx(b / (a + b), abs=TOL)


class TestEdgeCases:
    def test_unclassifiable(self, toy_model):
        outcome = classify(toy_model, ["never-seen"])
        assert outcome.unclassifiable
        assert outcome.label is None
        assert outcome.posteriors == ()
        assert outcome.ignored_features == 1

    def test_empty_bag_unclassifiable(self, toy_model):
        assert classify(toy_model, []).unclassifiable

    def test_lexicographic_tie_break(self):
        model = train([(["x"], "B"), (["x"], "A")])
        outcome = classify(model, ["x"])
        assert outcome.label == "A"
        posteriors = dict(outcome.posteriors)
        assert posteriors["A"] == pytest.approx(posteriors["B"], abs=TOL)

    def test_posteriors_sorted_best_first(self, toy_model):
        outcome = classify(toy_model, ["z"])
        probs = [p for _, p in outcome.posteriors]
        assert probs == sorted(probs, reverse=True)

    def test_invalid_training(self):
        with pytest.raises(ValueError):
            train([])
        with pytest.raises(ValueError):
            train(TOY, smoothing=0.0)

    def test_mixed_tokenization_rejected(self):
        a = tokenize("http://example.com/x", TokenMethod.TOKENS)
        b = tokenize("http://example.com/y", TokenMethod.ALL_GRAMS_URI)
        with pytest.raises(ValueError):
            train([(a, "A"), (b, "B")])

    def test_bag_config_mismatch_rejected(self):
        bags = [
            (tokenize("http://alpha.com/page", TokenMethod.TOKENS), "A"),
            (tokenize("http://beta.org/story", TokenMethod.TOKENS), "B"),
        ]
        model = train(bags)
        wrong = tokenize("http://alpha.com/page", TokenMethod.TOKENS, {TokenVariant.STRIP_TLD})
        with pytest.raises(ValueError):
            classify(model, wrong)


class TestLogSpace:
    def test_uniform_shift_leaves_posteriors_unchanged(self, toy_model):
        # Scaling every class's document count by 100 shifts every class
        # log-score by ln(100) and must not move posteriors or the argmax.
        shifted = NaiveBayesModel(
            {c: n * 100 for c, n in toy_model.doc_counts.items()},
            toy_model.feature_counts,
            toy_model.smoothing,
        )
        for bag in (["x", "y"], ["z"], ["x", "z", "z"]):
            a = classify(toy_model, bag)
            b = classify(shifted, bag)
            assert a.label == b.label
            for (_, pa), (_, pb) in zip(a.posteriors, b.posteriors):
                assert pa == pytest.approx(pb, abs=TOL)

    def test_long_bags_do_not_underflow(self, toy_model):
        outcome = classify(toy_model, ["x"] * 500 + ["y"] * 300)
        assert outcome.label == "A"
        total = sum(p for _, p in outcome.posteriors)
        assert total == pytest.approx(1.0, abs=TOL)
        assert dict(outcome.posteriors)["A"] > 0.999


class TestPersistence:
    def test_roundtrip_exact(self, tmp_path, toy_model):
        path = tmp_path / "model.nb"
        save_model(toy_model, path)
        loaded = load_model(path)
        assert loaded.doc_counts == toy_model.doc_counts
        assert loaded.feature_counts == toy_model.feature_counts
        assert loaded.smoothing == toy_model.smoothing
        for bag in (["x", "y"], ["z"]):
            a, b = classify(toy_model, bag), classify(loaded, bag)
            assert a.posteriors == b.posteriors

    def test_byte_stable(self, tmp_path, toy_model):
        one, two = tmp_path / "one.nb", tmp_path / "two.nb"
        save_model(toy_model, one)
        save_model(load_model(one), two)
        assert one.read_bytes() == two.read_bytes()

    def test_tokenization_config_persisted(self, tmp_path):
        bags = [
            (tokenize("http://alpha.com/page", TokenMethod.ALL_GRAMS_URI,
                      {TokenVariant.STRIP_TLD}), "A"),
            (tokenize("http://beta.org/story", TokenMethod.ALL_GRAMS_URI,
                      {TokenVariant.STRIP_TLD}), "B"),
        ]
        model = train(bags)
        path = tmp_path / "model.nb"
        save_model(model, path)
        loaded = load_model(path)
        assert loaded.method is TokenMethod.ALL_GRAMS_URI
        assert loaded.variants == frozenset({TokenVariant.STRIP_TLD})

    def test_rejects_foreign_file(self, tmp_path):
        path = tmp_path / "nope.nb"
        path.write_text("something else\n", "utf-8")
        with pytest.raises(ValueError):
            load_model(path)


@given(
    st.lists(
        st.tuples(
            st.lists(st.sampled_from("pqrs"), min_size=1, max_size=6),
            st.sampled_from(["A", "B", "C"]),
        ),
        min_size=1,
        max_size=20,
    ).filter(lambda corpus: len({label for _, label in corpus}) >= 2)
)
def test_posteriors_always_normalized(corpus):
    model = train(corpus)
    outcome = classify(model, ["p", "q"])
    if not outcome.unclassifiable:
        assert sum(p for _, p in outcome.posteriors) == pytest.approx(1.0, abs=1e-9)
        assert all(0.0 <= p <= 1.0 for _, p in outcome.posteriors)
        assert outcome.label == outcome.posteriors[0][0]


@given(st.integers(min_value=1, max_value=50))
def test_duplicating_corpus_preserves_argmax(k):
    base = train(TOY)
    scaled = train(TOY * k)
    for bag in (["x"], ["y"], ["z"], ["x", "z"]):
        assert classify(base, bag).label == classify(scaled, bag).label
