import hashlib

import numpy as np
import pytest

from veridict.augment import AugmentConfig, SynonymLexicon, augment_corpus
from veridict.classifiers import CLASSIFIER_KINDS
from veridict.evaluation import ExperimentConfig, build_pipeline
from veridict.exceptions import CorruptFileError, VersionMismatchError
from veridict.features import FeatureConfig
from veridict.persistence import FORMAT_VERSION, MAGIC, ModelBundle, dumps, load_model, loads, save_model


def hundred_reviews(corpus):
    """The 40 fixture reviews plus 60 synonym variants of them."""
    extra = augment_corpus(corpus, SynonymLexicon.default(), AugmentConfig(n_aug=2, replace_fraction=0.3))
    return extra.texts[:100]


def trained_bundle(corpus, kind, mode="tfidf"):
    cfg = ExperimentConfig(classifier=kind, feature=FeatureConfig(mode=mode, ngram_range=(1, 2)))
    pipe = build_pipeline(cfg).fit(corpus.texts, corpus.labels)
    return ModelBundle.from_pipeline(pipe, kind, cfg.train, corpus=corpus)


@pytest.mark.parametrize("kind", CLASSIFIER_KINDS)
@pytest.mark.parametrize("mode", ["count", "tfidf"])
def test_roundtrip_predictions_identical(mini_corpus, tmp_path, kind, mode):
    bundle = trained_bundle(mini_corpus, kind, mode)
    texts = hundred_reviews(mini_corpus)
    assert len(texts) == 100
    path = tmp_path / "model.vdm"
    save_model(bundle, path)
    loaded = load_model(path)
    assert list(loaded.predict(texts)) == list(bundle.predict(texts))
    np.testing.assert_array_equal(loaded.decision_function(texts), bundle.decision_function(texts))
    assert loaded.feature == bundle.feature and loaded.train == bundle.train
    assert dumps(loaded) == dumps(bundle)


def test_header_and_provenance(mini_corpus):
    text = dumps(trained_bundle(mini_corpus, "pa"))
    magic, version, digest = text.split("\n", 1)[0].split(" ")
    assert (magic, int(version), len(digest)) == (MAGIC, FORMAT_VERSION, 64)
    bundle = loads(text)
    assert bundle.provenance["corpus_size"] == 40
    assert len(bundle.provenance["corpus_sha256"]) == 64


def test_tampered_byte_detected(mini_corpus):
    text = dumps(trained_bundle(mini_corpus, "nb"))
    pos = text.index('"alpha"') + 2
    tampered = text[:pos] + ("b" if text[pos] != "b" else "c") + text[pos + 1 :]
    with pytest.raises(CorruptFileError):
        loads(tampered)
    with pytest.raises(CorruptFileError):
        loads(text[:-10])
    with pytest.raises(CorruptFileError):
        loads("not a model file")


def test_future_version_rejected(mini_corpus):
    body = dumps(trained_bundle(mini_corpus, "lr")).split("\n", 1)[1]
    future = FORMAT_VERSION + 1
    digest = hashlib.sha256(f"{MAGIC} {future}\n".encode() + body.encode()).hexdigest()
    with pytest.raises(VersionMismatchError):
        loads(f"{MAGIC} {future} {digest}\n{body}")


def test_floats_exact(mini_corpus):
    bundle = trained_bundle(mini_corpus, "lsvm")
    again = loads(dumps(bundle))
    before = bundle.pipeline.named_steps["clf"].model_.weights
    after = again.pipeline.named_steps["clf"].model_.weights
    assert before.tobytes() == after.tobytes()
