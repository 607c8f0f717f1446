from dataclasses import dataclass
from typing import Union

import numpy as np
import scipy.sparse as sp
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ..corpus import Label
from ..exceptions import DimensionMismatchError, EmptyClassError, EmptyTrainingSetError


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 5
    learning_rate: float = 0.1
    l2: float = 1e-4
    C: float = 1.0
    alpha: float = 1.0
    gamma: Union[float, str] = "scale"
    seed: int = 0
    tolerance: float = 1e-3

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        for name in ("learning_rate", "C", "alpha", "tolerance"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")
        if self.l2 < 0:
            raise ValueError("l2 must be >= 0")
        if self.gamma != "scale" and not float(self.gamma) > 0:
            raise ValueError("gamma must be > 0 or 'scale'")


def as_matrix(X):
    """CSR float64 view of ``X``; lists of ``{column: value}`` dicts are stacked."""
    if isinstance(X, (list, tuple)) and (not X or isinstance(X[0], dict)):
        from ..features import to_csr

        n_features = max((max(v) + 1 for v in X if v), default=0)
        return to_csr(X, n_features)
    X = check_array(X, accept_sparse="csr", dtype=np.float64, ensure_min_samples=0)
    return sp.csr_matrix(X) if not sp.issparse(X) else X


def _sign_of(value):
    if isinstance(value, Label):
        return value.sign
    if isinstance(value, str):
        return Label.parse(value).sign
    v = int(value)
    if v not in (-1, 0, 1):
        raise ValueError(f"cannot interpret {value!r} as a binary label")
    return 1 if v == 1 else -1


def encode_labels(y):
    """Map labels to +1 (deceptive / positive) and -1 (truthful / negative).

    Returns ``(signs, classes)`` where ``classes[0]`` decodes -1 and
    ``classes[1]`` decodes +1. Accepts Label members, their string values,
    or numeric {-1, +1} / {0, 1} labels.
    """
    y = list(y)
    if not y:
        raise EmptyTrainingSetError("no training labels")
    signs = np.array([_sign_of(v) for v in y], dtype=np.float64)
    first = y[0]
    if isinstance(first, Label):
        classes = np.array([Label.TRUTHFUL, Label.DECEPTIVE], dtype=object)
    elif isinstance(first, str):
        classes = np.array([Label.TRUTHFUL.value, Label.DECEPTIVE.value], dtype=object)
    elif any(int(v) == 0 for v in y):
        classes = np.array([0, 1])
    else:
        classes = np.array([-1, 1])
    return signs, classes


def check_training_set(X, signs):
    if X.shape[0] == 0:
        raise EmptyTrainingSetError("no training examples")
    if X.shape[0] != len(signs):
        raise DimensionMismatchError(f"X has {X.shape[0]} rows but y has {len(signs)} labels")
    for s, name in ((1, "deceptive"), (-1, "truthful")):
        if not np.any(signs == s):
            raise EmptyClassError(f"no {name} (y={s:+d}) training examples")


def align_features(X, n_features):
    """Pad or reject ``X`` so that it has exactly ``n_features`` columns."""
    if X.shape[1] > n_features:
        raise DimensionMismatchError(f"input has {X.shape[1]} features, model has {n_features}")
    if X.shape[1] < n_features:
        X = sp.csr_matrix(X)
        X = sp.csr_matrix((X.data, X.indices, X.indptr), shape=(X.shape[0], n_features))
    return X


def scores_to_signs(scores):
    # score exactly 0 -> deceptive (+1)
    return np.where(np.asarray(scores) >= 0.0, 1, -1)


class BinaryClassifier(ClassifierMixin, BaseEstimator):
    """Shared fit/predict plumbing; subclasses implement ``_train(X, signs)``."""

    def fit(self, X, y):
        X = as_matrix(X)
        signs, self.classes_ = encode_labels(y)
        check_training_set(X, signs)
        self.n_features_in_ = X.shape[1]
        self.model_ = self._train(X, signs)
        return self

    def decision_function(self, X):
        check_is_fitted(self, "model_")
        return self.model_.decision_function(as_matrix(X))

    def predict(self, X):
        signs = scores_to_signs(self.decision_function(X))
        return self.classes_[(signs + 1) // 2]

    def score(self, X, y, sample_weight=None):
        """Mean accuracy; compares labels directly so Label members work."""
        truth = np.array([_sign_of(v) for v in y])
        correct = scores_to_signs(self.decision_function(X)) == truth
        return float(np.average(correct, weights=sample_weight))
