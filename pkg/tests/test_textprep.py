import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from veridict.corpus import Label, Review
from veridict.textprep import (
    LemmaDictionary,
    StopwordList,
    SuffixRule,
    TextPreprocessor,
    lemmatize,
    normalize,
    preprocess,
    preprocess_text,
    remove_stopwords,
    tokenize,
)

STOP = StopwordList.default()
LEMMAS = LemmaDictionary.default()
TOKEN = re.compile(r"[a-z0-9]+")


@pytest.mark.parametrize(
    "raw, expected",
    [
        ("Great Hotel!!! visit http://x.co now", "great hotel visit now"),
        ("", ""),
        ("Well-lit room.", "well lit room"),
        ("Café naïve résumé", "cafe naive resume"),
        ("Room 1412, $189/night", "room 1412 189 night"),
        ("see www.example.com today", "see today"),
    ],
)
def test_normalize(raw, expected):
    assert normalize(raw) == expected


def test_tokenize():
    assert tokenize("the food is tasty") == ["the", "food", "is", "tasty"]
    assert tokenize("") == []
    assert tokenize("a  b") == ["a", "b"]


def test_remove_stopwords():
    assert remove_stopwords(["the", "food", "is", "tasty"], STOP) == ["food", "tasty"]
    assert remove_stopwords([], STOP) == []
    assert remove_stopwords(["the", "is", "of"], STOP) == []


def test_stoplist_size_and_case():
    assert 100 <= len(STOP.words) <= 200
    assert all(w == w.lower() for w in STOP.words)


def test_stoplist_from_lines_skips_comments():
    stop = StopwordList.from_lines(["# header", "The", "", "of"])
    assert stop.words == frozenset({"the", "of"})


@pytest.mark.parametrize(
    "surface, lemma",
    [
        ("singing", "sing"),
        ("sang", "sing"),
        ("hotel", "hotel"),
        ("singer", "singer"),
        ("rooms", "room"),
        ("stories", "story"),
        ("went", "go"),
        ("children", "child"),
        ("buildings", "build"),
        ("stayed", "stay"),
        ("booked", "book"),
        ("glass", "glass"),
        ("morning", "morning"),
    ],
)
def test_lemmatize(surface, lemma):
    assert lemmatize(surface, LEMMAS) == lemma


def test_suffix_rule_min_stem():
    rule = SuffixRule("ing", "", 3)
    assert rule.apply("singing") == "sing"
    assert rule.apply("bring") is None


def test_custom_dictionary_first_rule_wins():
    lemmas = LemmaDictionary(
        exceptions={"geese": "goose"},
        suffix_rules=(SuffixRule("ies", "y", 2), SuffixRule("s", "", 2)),
    )
    assert lemmatize("geese", lemmas) == "goose"
    assert lemmatize("parties", lemmas) == "party"
    assert lemmatize("cats", lemmas) == "cat"


def test_preprocess_examples():
    doc = preprocess(Review(0, "The food is TASTY!", Label.TRUTHFUL), STOP, LEMMAS)
    assert doc.tokens == ("food", "tasty")
    assert preprocess(Review(1, "is of the", Label.TRUTHFUL), STOP, LEMMAS).tokens == ()


def test_fixture_invariants(mini_corpus):
    for review in mini_corpus:
        tokens = preprocess_text(review.text, STOP, LEMMAS)
        assert all(TOKEN.fullmatch(t) for t in tokens)
        assert not set(tokens) & STOP.words
        assert preprocess_text(" ".join(tokens), STOP, LEMMAS) == tokens


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=80))
def test_pipeline_properties_on_arbitrary_text(text):
    tokens = preprocess_text(text, STOP, LEMMAS)
    assert all(TOKEN.fullmatch(t) for t in tokens)
    assert not set(tokens) & STOP.words
    assert preprocess_text(" ".join(tokens), STOP, LEMMAS) == tokens


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=14))
def test_lemmatize_total_and_idempotent(word):
    lemma = lemmatize(word, LEMMAS)
    assert lemma
    assert lemmatize(lemma, LEMMAS) == lemma


def test_transformer_accepts_reviews_and_texts():
    prep = TextPreprocessor().fit(None)
    review = Review(0, "Rooms were clean", Label.TRUTHFUL)
    assert prep.transform([review]) == prep.transform(["Rooms were clean"]) == [["room", "clean"]]
    assert prep.get_params() == {"stoplist": None, "lemmas": None}
