"""Versioned, checksummed model files.

A model file is UTF-8 text: a header line ``veridict-model <version> <sha256>``
followed by a JSON document. The SHA-256 covers ``veridict-model <version>\\n``
plus the JSON bytes, so any altered byte is detected. Floats are written with
Python's shortest round-trip ``repr``, which makes save/load lossless.
"""

import datetime
import hashlib
import json
from dataclasses import asdict, dataclass, field

import numpy as np
import scipy.sparse as sp
from sklearn.pipeline import Pipeline

from ._io import atomic_write_text
from .classifiers import (
    KernelSVMModel,
    LinearKind,
    LinearModel,
    NBModel,
    make_classifier,
)
from .classifiers._base import TrainConfig
from .corpus import Label, corpus_to_csv
from .exceptions import CorruptFileError, VersionMismatchError
from .features import FeatureConfig, FeatureMode, NgramRange, NgramVectorizer, Vocabulary
from .textprep import TextPreprocessor

MAGIC = "veridict-model"
FORMAT_VERSION = 1


@dataclass
class ModelBundle:
    feature: FeatureConfig
    classifier: str
    train: TrainConfig
    pipeline: Pipeline
    seed: int = 0
    provenance: dict = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    @classmethod
    def from_pipeline(cls, pipeline, classifier, train=TrainConfig(), corpus=None, seed=None):
        vec = pipeline.named_steps["vec"]
        provenance = {"created": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")}
        if corpus is not None:
            provenance["corpus_sha256"] = hashlib.sha256(corpus_to_csv(corpus).encode("utf-8")).hexdigest()
            provenance["corpus_size"] = len(corpus)
        return cls(
            feature=vec.config,
            classifier=classifier,
            train=train,
            pipeline=pipeline,
            seed=train.seed if seed is None else seed,
            provenance=provenance,
        )

    def predict(self, texts):
        return self.pipeline.predict(list(texts))

    def decision_function(self, texts):
        return self.pipeline.decision_function(list(texts))


def _dense(a):
    return [float(v) for v in np.asarray(a, dtype=np.float64).ravel()]


def _model_payload(model):
    if isinstance(model, LinearModel):
        return {"type": "linear", "kind": model.kind.value, "weights": _dense(model.weights), "bias": float(model.bias)}
    if isinstance(model, NBModel):
        return {
            "type": "nb",
            "log_prior": _dense(model.log_prior),
            "log_likelihood": [_dense(row) for row in model.log_likelihood],
            "alpha": float(model.alpha),
        }
    if isinstance(model, KernelSVMModel):
        sv = sp.csr_matrix(model.support_vectors)
        return {
            "type": "kernel_svm",
            "shape": list(sv.shape),
            "data": _dense(sv.data),
            "indices": [int(i) for i in sv.indices],
            "indptr": [int(i) for i in sv.indptr],
            "dual_coef": _dense(model.dual_coef),
            "bias": float(model.bias),
            "gamma": float(model.gamma),
            "C": float(model.C),
            "converged": bool(model.converged),
            "n_iter": int(model.n_iter),
        }
    raise TypeError(f"cannot serialize {type(model).__name__}")


def _model_from_payload(p):
    kind = p["type"]
    if kind == "linear":
        return LinearModel(np.array(p["weights"], dtype=np.float64), float(p["bias"]), LinearKind(p["kind"]))
    if kind == "nb":
        return NBModel(
            np.array(p["log_prior"], dtype=np.float64),
            np.array(p["log_likelihood"], dtype=np.float64),
            float(p["alpha"]),
        )
    if kind == "kernel_svm":
        sv = sp.csr_matrix(
            (np.array(p["data"], dtype=np.float64), np.array(p["indices"], dtype=np.int32), np.array(p["indptr"], dtype=np.int32)),
            shape=tuple(p["shape"]),
        )
        return KernelSVMModel(
            sv, np.array(p["dual_coef"], dtype=np.float64), float(p["bias"]), float(p["gamma"]),
            float(p["C"]), bool(p["converged"]), int(p["n_iter"]),
        )
    raise CorruptFileError(f"unknown model type {kind!r}")


def _encode_classes(classes):
    first = classes[0]
    if isinstance(first, Label):
        return {"type": "label", "values": [c.value for c in classes]}
    if isinstance(first, str):
        return {"type": "str", "values": list(classes)}
    return {"type": "int", "values": [int(c) for c in classes]}


def _decode_classes(spec):
    if spec["type"] == "label":
        return np.array([Label(v) for v in spec["values"]], dtype=object)
    if spec["type"] == "str":
        return np.array(spec["values"], dtype=object)
    return np.array(spec["values"])


def bundle_to_dict(bundle):
    vec = bundle.pipeline.named_steps["vec"]
    clf = bundle.pipeline.named_steps["clf"]
    feature = asdict(bundle.feature)
    feature["ngram_range"] = list(bundle.feature.ngram_range)
    feature["mode"] = bundle.feature.mode.value
    vocab = vec.vocabulary_
    return {
        "feature": feature,
        "vocabulary": {
            "terms": list(vocab.terms),
            "doc_freq": [int(vocab.doc_freq[t]) for t in vocab.terms],
            "n_docs": int(vocab.n_docs),
        },
        "idf": None if vec.idf_ is None else _dense(vec.idf_),
        "classifier": {
            "kind": bundle.classifier,
            "classes": _encode_classes(clf.classes_),
            "model": _model_payload(clf.model_),
        },
        "train": asdict(bundle.train),
        "seed": int(bundle.seed),
        "provenance": bundle.provenance,
    }


def bundle_from_dict(data):
    feature = dict(data["feature"])
    feature["ngram_range"] = NgramRange.coerce(feature["ngram_range"])
    feature["mode"] = FeatureMode(feature["mode"])
    feature_cfg = FeatureConfig(**feature)
    train = TrainConfig(**data["train"])

    vec = NgramVectorizer.from_config(feature_cfg)
    voc = data["vocabulary"]
    terms = voc["terms"]
    vec.vocabulary_ = Vocabulary(
        index={t: i for i, t in enumerate(terms)},
        doc_freq=dict(zip(terms, voc["doc_freq"])),
        n_docs=voc["n_docs"],
    )
    vec.idf_ = None if data["idf"] is None else np.array(data["idf"], dtype=np.float64)
    vec.n_features_out_ = len(terms)

    spec = data["classifier"]
    clf = make_classifier(spec["kind"], train)
    clf.model_ = _model_from_payload(spec["model"])
    clf.classes_ = _decode_classes(spec["classes"])
    clf.n_features_in_ = len(terms)

    prep = TextPreprocessor().fit(None)
    pipeline = Pipeline([("prep", prep), ("vec", vec), ("clf", clf)])
    return ModelBundle(
        feature=feature_cfg,
        classifier=spec["kind"],
        train=train,
        pipeline=pipeline,
        seed=data["seed"],
        provenance=data.get("provenance", {}),
    )


def dumps(bundle):
    body = json.dumps(bundle_to_dict(bundle), sort_keys=True, indent=1, allow_nan=False) + "\n"
    digest = hashlib.sha256(f"{MAGIC} {bundle.format_version}\n".encode() + body.encode("utf-8")).hexdigest()
    return f"{MAGIC} {bundle.format_version} {digest}\n{body}"


def loads(text):
    header, sep, body = text.partition("\n")
    parts = header.split(" ")
    if not sep or len(parts) != 3 or parts[0] != MAGIC or not parts[1].isdigit():
        raise CorruptFileError("missing or malformed model file header")
    version = int(parts[1])
    digest = hashlib.sha256(f"{MAGIC} {parts[1]}\n".encode() + body.encode("utf-8")).hexdigest()
    if digest != parts[2]:
        raise CorruptFileError("checksum mismatch; the model file was altered or truncated")
    if version != FORMAT_VERSION:
        raise VersionMismatchError(f"model format version {version} is not supported (expected {FORMAT_VERSION})")
    try:
        return bundle_from_dict(json.loads(body))
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptFileError(f"model payload is malformed: {exc}") from exc


def save_model(bundle, path):
    atomic_write_text(path, dumps(bundle))


def load_model(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except UnicodeDecodeError as exc:
        raise CorruptFileError(f"model file is not valid UTF-8: {exc}") from exc
    return loads(text)
