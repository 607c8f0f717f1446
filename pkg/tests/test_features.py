import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from veridict.exceptions import EmptyVocabularyError
from veridict.features import (
    FeatureConfig,
    NgramRange,
    NgramVectorizer,
    build_vocabulary,
    compute_idf,
    count_vectorize,
    extract_ngrams,
    fit_tfidf,
    tfidf_vectorize,
)

from .oracles import direct_tfidf, naive_count, naive_vocabulary

UNI = FeatureConfig(ngram_range=(1, 1), max_features=10)
GOOD_BAD = [["good", "food"], ["bad", "food"]]


class TestNgrams:
    def test_bigrams(self):
        assert extract_ngrams(["the", "food", "is", "tasty"], (2, 2)) == ["the food", "food is", "is tasty"]

    def test_count_of_mixed_orders(self):
        assert len(extract_ngrams(list("abcd"), (1, 3))) == 9

    def test_too_short(self):
        assert extract_ngrams(["x"], (2, 3)) == []

    @pytest.mark.parametrize("bad", [(0, 1), (2, 1), (1, 6)])
    def test_range_validation(self, bad):
        with pytest.raises(ValueError):
            NgramRange(*bad)


class TestVocabulary:
    def test_full_enumeration(self):
        vocab = build_vocabulary(GOOD_BAD, UNI)
        assert vocab.index == {"bad": 0, "food": 1, "good": 2}
        assert vocab.doc_freq == {"bad": 1, "food": 2, "good": 1}
        assert vocab.n_docs == 2

    def test_cap_keeps_most_frequent(self):
        vocab = build_vocabulary(GOOD_BAD, FeatureConfig(ngram_range=(1, 1), max_features=1))
        assert vocab.index == {"food": 0}

    def test_tie_break_lexicographic(self):
        vocab = build_vocabulary(GOOD_BAD, FeatureConfig(ngram_range=(1, 1), max_features=2))
        assert vocab.index == {"bad": 0, "food": 1}

    def test_empty(self):
        with pytest.raises(EmptyVocabularyError):
            build_vocabulary([], UNI)
        with pytest.raises(EmptyVocabularyError):
            build_vocabulary([["x"]], FeatureConfig(ngram_range=(2, 2)))


class TestCounts:
    def test_examples(self):
        vocab = build_vocabulary(GOOD_BAD, UNI)
        assert count_vectorize(["good", "food"], vocab, (1, 1)) == {1: 1.0, 2: 1.0}
        assert count_vectorize(["zzz"], vocab, (1, 1)) == {}
        assert count_vectorize(["food", "food"], vocab, (1, 1)) == {1: 2.0}


class TestTfIdf:
    def test_idf_values(self):
        model = fit_tfidf(GOOD_BAD, UNI)
        assert model.idf[model.vocab.index["food"]] == 0.0
        assert model.idf[model.vocab.index["good"]] == pytest.approx(0.693147, abs=1e-6)

    def test_single_doc_all_zero(self):
        model = fit_tfidf([["a", "b"]], UNI)
        assert np.all(model.idf == 0.0)

    def test_vectorize_example(self):
        model = fit_tfidf(GOOD_BAD, UNI)
        vec = tfidf_vectorize(["good", "food"], model, (1, 1))
        assert vec == {2: pytest.approx(0.5 * math.log(2), abs=1e-12)}
        assert tfidf_vectorize([], model, (1, 1)) == {}

    def test_idf_monotone_in_df(self):
        docs = [["a", "b", "c"], ["a", "b"], ["a"], ["d"]]
        model = fit_tfidf(docs, UNI)
        order = sorted(model.vocab.terms, key=lambda t: model.vocab.doc_freq[t])
        idf = [model.idf[model.vocab.index[t]] for t in order]
        assert all(x >= y for x, y in zip(idf, idf[1:]))

    def test_smooth_idf(self):
        model = fit_tfidf(GOOD_BAD, FeatureConfig(ngram_range=(1, 1), smooth_idf=True))
        assert model.idf[model.vocab.index["food"]] == pytest.approx(1.0)

    def test_tf_sums_to_one_when_all_in_vocab(self):
        doc = ["a", "b", "a", "c"]
        vocab = build_vocabulary([doc], FeatureConfig(ngram_range=(1, 2)))
        counts = count_vectorize(doc, vocab, (1, 2))
        assert sum(counts.values()) / len(extract_ngrams(doc, (1, 2))) == pytest.approx(1.0)


word = st.sampled_from(["a", "b", "c", "d", "e"])
micro_corpus = st.lists(st.lists(word, min_size=1, max_size=6), min_size=1, max_size=8)


@settings(max_examples=100, deadline=None)
@given(micro_corpus, st.integers(1, 3), st.integers(0, 2), st.integers(1, 40))
def test_oracle_equivalence(docs, lo, span, cap):
    hi = min(lo + span, 5)
    if not any(len(d) >= lo for d in docs):
        return
    cfg = FeatureConfig(ngram_range=(lo, hi), max_features=cap, mode="tfidf", norm=None)
    model = fit_tfidf(docs, cfg)
    terms, df = naive_vocabulary(docs, lo, hi, cap)
    assert list(model.vocab.terms) == terms
    assert len(model.vocab) <= cap
    for doc in docs:
        assert count_vectorize(doc, model.vocab, (lo, hi)) == naive_count(doc, terms, lo, hi)
        got = tfidf_vectorize(doc, model, (lo, hi))
        want = direct_tfidf(doc, terms, df, len(docs), lo, hi)
        assert got.keys() == want.keys()
        for col in want:
            assert abs(got[col] - want[col]) <= 1e-12


class TestVectorizer:
    docs = [["good", "food"], ["bad", "food"], ["good", "good", "view"]]

    def test_matches_functional_api_without_norm(self):
        vec = NgramVectorizer(ngram_range=(1, 2), max_features=50, mode="tfidf", norm=None).fit(self.docs)
        X = vec.transform(self.docs).toarray()
        model = fit_tfidf(self.docs, vec.config)
        for r, doc in enumerate(self.docs):
            expected = np.zeros(X.shape[1])
            for c, v in tfidf_vectorize(doc, model, (1, 2)).items():
                expected[c] = v
            np.testing.assert_allclose(X[r], expected, rtol=0, atol=1e-15)

    def test_auto_norm(self):
        tf = NgramVectorizer(mode="tfidf").fit(self.docs).transform(self.docs)
        norms = np.sqrt(np.asarray(tf.multiply(tf).sum(axis=1)).ravel())
        np.testing.assert_allclose(norms[norms > 0], 1.0)
        counts = NgramVectorizer(mode="count", ngram_range=(1, 1)).fit(self.docs).transform([["good", "good"]])
        assert counts.toarray().max() == 2.0

    def test_no_explicit_zeros(self):
        X = NgramVectorizer(mode="tfidf").fit(self.docs).transform(self.docs)
        assert np.all(X.data != 0)

    def test_idf_only_in_tfidf_mode(self):
        assert NgramVectorizer(mode="count").fit(self.docs).idf_ is None
        assert NgramVectorizer(mode="tfidf").fit(self.docs).idf_ is not None

    def test_unseen_words_ignored(self):
        vec = NgramVectorizer(mode="count").fit(self.docs)
        assert vec.transform([["never", "seen"]]).nnz == 0

    def test_feature_names_sorted(self):
        names = list(NgramVectorizer(ngram_range=(1, 1)).fit(self.docs).get_feature_names_out())
        assert names == sorted(names) == ["bad", "food", "good", "view"]

    def test_compute_idf_formula(self):
        vocab = build_vocabulary(self.docs, FeatureConfig(ngram_range=(1, 1)))
        idf = compute_idf(vocab)
        for t, c in vocab.index.items():
            assert idf[c] == math.log(3 / vocab.doc_freq[t])
