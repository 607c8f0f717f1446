"""N-gram vocabularies and count / TF-IDF vectorization.

Term frequency is the n-gram count divided by the number of n-grams (of all
orders in the range) extracted from the document, and the inverse document
frequency is ``ln(N / df)`` over the training documents.

The functional API (``count_vectorize``, ``tfidf_vectorize``) returns the raw
values. ``NgramVectorizer`` can additionally scale each row to unit L2 norm;
with ``norm="auto"`` it does so for TF-IDF only. Unnormalized TF-IDF rows have
squared norms far below 1, which stalls constant-step linear learners whose
bias acts as a feature of value 1.
"""

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.sparse as sp
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .exceptions import EmptyVocabularyError


class FeatureMode(enum.Enum):
    COUNT = "count"
    TFIDF = "tfidf"


@dataclass(frozen=True)
class NgramRange:
    lo: int = 1
    hi: int = 3

    def __post_init__(self):
        if not 1 <= self.lo <= self.hi <= 5:
            raise ValueError(f"need 1 <= lo <= hi <= 5, got ({self.lo}, {self.hi})")

    @classmethod
    def coerce(cls, value):
        if isinstance(value, cls):
            return value
        lo, hi = value
        return cls(int(lo), int(hi))

    def __iter__(self):
        return iter((self.lo, self.hi))


@dataclass(frozen=True)
class FeatureConfig:
    ngram_range: NgramRange = NgramRange(1, 3)
    max_features: int = 11000
    mode: FeatureMode = FeatureMode.TFIDF
    smooth_idf: bool = False
    norm: Optional[str] = "auto"

    def __post_init__(self):
        object.__setattr__(self, "ngram_range", NgramRange.coerce(self.ngram_range))
        object.__setattr__(self, "mode", FeatureMode(self.mode))
        if self.max_features < 1:
            raise ValueError(f"max_features must be >= 1, got {self.max_features}")
        if self.norm not in (None, "l2", "auto"):
            raise ValueError(f"norm must be None, 'l2' or 'auto', got {self.norm!r}")

    @property
    def effective_norm(self):
        if self.norm == "auto":
            return "l2" if self.mode is FeatureMode.TFIDF else None
        return self.norm


@dataclass(frozen=True)
class Vocabulary:
    index: dict
    doc_freq: dict
    n_docs: int
    terms: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        terms = tuple(sorted(self.index, key=self.index.__getitem__))
        if [self.index[t] for t in terms] != list(range(len(terms))):
            raise ValueError("vocabulary indices must be 0..n-1 without gaps")
        object.__setattr__(self, "terms", terms)

    def __len__(self):
        return len(self.index)


@dataclass(frozen=True)
class TfIdfModel:
    vocab: Vocabulary
    idf: np.ndarray


def _tokens(doc):
    return doc.tokens if hasattr(doc, "tokens") else doc


def extract_ngrams(doc, ngram_range=NgramRange(1, 3)):
    tokens = list(_tokens(doc))
    lo, hi = NgramRange.coerce(ngram_range)
    out = []
    for n in range(lo, hi + 1):
        out.extend(" ".join(tokens[i : i + n]) for i in range(len(tokens) - n + 1))
    return out


def build_vocabulary(docs, cfg=FeatureConfig()):
    """Keep the ``max_features`` most frequent n-grams (ties: lexicographic).

    Columns are then numbered in lexicographic order of the kept n-grams.
    """
    if not docs:
        raise EmptyVocabularyError("no documents to build a vocabulary from")
    totals = Counter()
    df = Counter()
    for doc in docs:
        grams = extract_ngrams(doc, cfg.ngram_range)
        totals.update(grams)
        df.update(set(grams))
    if not totals:
        raise EmptyVocabularyError("no n-grams extracted from any document")
    ranked = sorted(totals, key=lambda g: (-totals[g], g))
    kept = sorted(ranked[: cfg.max_features])
    index = {g: i for i, g in enumerate(kept)}
    return Vocabulary(index=index, doc_freq={g: df[g] for g in kept}, n_docs=len(docs))


def count_vectorize(doc, vocab, ngram_range=NgramRange(1, 3)):
    """Sparse count vector as ``{column: count}``; OOV n-grams are ignored."""
    counts = Counter()
    for g in extract_ngrams(doc, ngram_range):
        col = vocab.index.get(g)
        if col is not None:
            counts[col] += 1
    return {c: float(v) for c, v in sorted(counts.items())}


def compute_idf(vocab, smooth=False):
    df = np.array([vocab.doc_freq[t] for t in vocab.terms], dtype=np.float64)
    n = float(vocab.n_docs)
    if smooth:
        return np.log((1.0 + n) / (1.0 + df)) + 1.0
    return np.log(n / df)


def fit_tfidf(docs, cfg=FeatureConfig()):
    vocab = build_vocabulary(docs, cfg)
    return TfIdfModel(vocab=vocab, idf=compute_idf(vocab, cfg.smooth_idf))


def tfidf_vectorize(doc, model, ngram_range=NgramRange(1, 3)):
    """Sparse TF-IDF vector; zero products (df == N) are omitted."""
    grams = extract_ngrams(doc, ngram_range)
    counts = Counter(model.vocab.index[g] for g in grams if g in model.vocab.index)
    out = {}
    for col in sorted(counts):
        value = (counts[col] / len(grams)) * float(model.idf[col])
        if value != 0.0:
            out[col] = value
    return out


def to_csr(vectors, n_features):
    """Stack ``{column: value}`` dicts into a CSR matrix."""
    indptr = [0]
    indices = []
    data = []
    for vec in vectors:
        for col in sorted(vec):
            indices.append(col)
            data.append(vec[col])
        indptr.append(len(indices))
    return sp.csr_matrix(
        (np.asarray(data, dtype=np.float64), np.asarray(indices, dtype=np.int64), np.asarray(indptr)),
        shape=(len(vectors), n_features),
    )


class NgramVectorizer(TransformerMixin, BaseEstimator):
    """Fit an n-gram vocabulary on token lists and emit CSR feature matrices.

    Parameters
    ----------
    ngram_range : tuple of int, default=(1, 3)
    max_features : int, default=11000
    mode : {"count", "tfidf"}, default="tfidf"
    smooth_idf : bool, default=False
        Use ``ln((1 + N) / (1 + df)) + 1`` instead of ``ln(N / df)``.
    norm : {"auto", "l2", None}, default="auto"
        Row normalization; ``"auto"`` is ``"l2"`` for tfidf, None for count.

    Attributes
    ----------
    vocabulary_ : Vocabulary
    idf_ : ndarray of shape (n_features,) or None
        Only set in tfidf mode.
    """

    def __init__(self, ngram_range=(1, 3), max_features=11000, mode="tfidf", smooth_idf=False, norm="auto"):
        self.ngram_range = ngram_range
        self.max_features = max_features
        self.mode = mode
        self.smooth_idf = smooth_idf
        self.norm = norm

    @classmethod
    def from_config(cls, cfg):
        return cls(
            ngram_range=tuple(cfg.ngram_range),
            max_features=cfg.max_features,
            mode=cfg.mode.value,
            smooth_idf=cfg.smooth_idf,
            norm=cfg.norm,
        )

    @property
    def config(self):
        return FeatureConfig(
            ngram_range=NgramRange.coerce(self.ngram_range),
            max_features=self.max_features,
            mode=FeatureMode(self.mode),
            smooth_idf=self.smooth_idf,
            norm=self.norm,
        )

    def fit(self, X, y=None):
        cfg = self.config
        self.vocabulary_ = build_vocabulary(list(X), cfg)
        self.idf_ = compute_idf(self.vocabulary_, cfg.smooth_idf) if cfg.mode is FeatureMode.TFIDF else None
        self.n_features_out_ = len(self.vocabulary_)
        return self

    def transform(self, X):
        check_is_fitted(self, "vocabulary_")
        rng = NgramRange.coerce(self.ngram_range)
        index = self.vocabulary_.index
        X = list(X)
        rows, cols, vals = [], [], []
        for r, doc in enumerate(X):
            grams = extract_ngrams(doc, rng)
            counts = Counter(index[g] for g in grams if g in index)
            if not counts:
                continue
            denom = len(grams)
            for c, v in counts.items():
                if self.idf_ is None:
                    val = float(v)
                else:
                    val = (v / denom) * self.idf_[c]
                if val != 0.0:
                    rows.append(r)
                    cols.append(c)
                    vals.append(val)
        X_out = sp.csr_matrix(
            (np.asarray(vals, dtype=np.float64), (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))),
            shape=(len(X), self.n_features_out_),
        )
        X_out.sort_indices()
        if self.config.effective_norm == "l2":
            norms = np.sqrt(np.asarray(X_out.multiply(X_out).sum(axis=1)).ravel())
            norms[norms == 0.0] = 1.0
            X_out = sp.csr_matrix(sp.diags(1.0 / norms) @ X_out)
            X_out.sort_indices()
        return X_out

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "vocabulary_")
        return np.asarray(self.vocabulary_.terms, dtype=object)

    @property
    def tfidf_model(self):
        check_is_fitted(self, "vocabulary_")
        if self.idf_ is None:
            raise AttributeError("vectorizer was fitted in count mode")
        return TfIdfModel(self.vocabulary_, self.idf_)
