import io
import math

import pytest

from veridict._random import make_rng
from veridict.augment import (
    AugmentConfig,
    SynonymLexicon,
    augment_corpus,
    augment_review,
    augment_text,
    load_lexicon,
    parse_lexicon,
)
from veridict.corpus import Corpus, Label, Review, corpus_to_csv, read_csv
from veridict.exceptions import LexiconParseError
from veridict.textprep import StopwordList


def test_parse_line():
    lex = parse_lexicon(["tasty\tdelicious,flavorful"])
    assert lex.synonyms == {"tasty": ("delicious", "flavorful")}


def test_empty_file_is_empty_lexicon(tmp_path):
    path = tmp_path / "lex.tsv"
    path.write_text("")
    assert len(load_lexicon(path)) == 0


@pytest.mark.parametrize(
    "line, lineno",
    [("x\tx", 1), ("Tasty\tgood", 1), ("no tab here", 1), ("a\t", 1)],
)
def test_parse_errors(line, lineno):
    with pytest.raises(LexiconParseError) as err:
        parse_lexicon([line])
    assert err.value.line == lineno


def test_parse_error_reports_line_number():
    with pytest.raises(LexiconParseError) as err:
        parse_lexicon(["# comment", "good\tfine", "bad\tbad"])
    assert err.value.line == 3


def test_bundled_lexicon():
    lex = SynonymLexicon.default()
    assert 1900 <= len(lex) <= 2100
    for head, syns in lex.synonyms.items():
        assert head not in syns and head == head.lower()


def test_single_possible_outcome():
    review = Review(0, "food tasty", Label.TRUTHFUL)
    lex = SynonymLexicon({"tasty": ["delicious"]})
    copies = augment_review(review, lex, AugmentConfig(n_aug=1, replace_fraction=1.0))
    assert [c.text for c in copies] == ["food delicious"]
    assert copies[0].parent_id == 0


def test_no_hits_gives_verbatim_copies():
    review = Review(3, "Nothing to see.", Label.DECEPTIVE, hotel="omni")
    copies = augment_review(review, SynonymLexicon({"tasty": ["delicious"]}), AugmentConfig(n_aug=10))
    assert len(copies) == 10
    assert all(c.text == review.text and c.label is review.label and c.hotel == "omni" for c in copies)


def test_replacement_count_and_case():
    lex = SynonymLexicon({"big": ["large"], "room": ["chamber"], "clean": ["spotless"], "the": ["da"]})
    cfg = AugmentConfig(n_aug=1, replace_fraction=0.5)
    text = "The Big room was clean and BIG"
    out = augment_text(text, lex, cfg, make_rng(0), StopwordList.default())
    # eligible: Big, room, clean, BIG (the stop word "The" is never eligible)
    changed = sum(a != b for a, b in zip(text.split(), out.split()))
    assert changed == math.ceil(0.5 * 4)
    assert out.startswith("The ")
    for a, b in zip(text.split(), out.split()):
        if a != b:
            assert a[0].isupper() == b[0].isupper()


def test_determinism(mini_corpus):
    lex = SynonymLexicon.default()
    cfg = AugmentConfig(n_aug=3, seed=5)
    a = augment_corpus(mini_corpus, lex, cfg)
    b = augment_corpus(mini_corpus, lex, cfg)
    assert corpus_to_csv(a) == corpus_to_csv(b)
    c = augment_corpus(mini_corpus, lex, AugmentConfig(n_aug=3, seed=6))
    assert corpus_to_csv(a) != corpus_to_csv(c)


def test_copies_independent_of_corpus_composition(mini_corpus):
    lex = SynonymLexicon.default()
    cfg = AugmentConfig(n_aug=2, seed=1)
    review = mini_corpus.reviews[5]
    alone = augment_review(review, lex, cfg)
    full = augment_corpus(mini_corpus, lex, cfg)
    in_corpus = [r.text for r in full if r.parent_id == review.id]
    assert in_corpus == [c.text for c in alone]


def test_size_law_and_labels(mini_corpus):
    cfg = AugmentConfig(n_aug=10)
    out = augment_corpus(mini_corpus, SynonymLexicon.default(), cfg)
    assert len(out) == len(mini_corpus) * 11
    assert out.label_counts == {lab: 11 * n for lab, n in mini_corpus.label_counts.items()}
    by_id = {r.id: r for r in out}
    for r in out:
        if r.parent_id is not None:
            assert r.label is by_id[r.parent_id].label


def test_empty_lexicon_duplicates():
    corpus = Corpus((Review(0, "a b", Label.TRUTHFUL), Review(1, "c d", Label.DECEPTIVE)))
    out = augment_corpus(corpus, SynonymLexicon({}), AugmentConfig(n_aug=1))
    assert len(out) == 4
    assert sorted(out.texts) == ["a b", "a b", "c d", "c d"]


def test_output_reingestable(mini_corpus):
    out = augment_corpus(mini_corpus, SynonymLexicon.default(), AugmentConfig(n_aug=2))
    again = read_csv(io.StringIO(corpus_to_csv(out)))
    assert len(again) == len(out)
    assert [r.parent_id for r in again] == [r.parent_id for r in out]


@pytest.mark.parametrize("kwargs", [{"n_aug": 0}, {"replace_fraction": 0.0}, {"replace_fraction": 1.5}])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        AugmentConfig(**kwargs)
