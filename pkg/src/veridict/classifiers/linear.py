"""Linear classifiers trained by per-example updates over shuffled epochs.

All three share the sparse update loop: rows of a CSR matrix are visited in a
seeded random order each epoch and only the touched weight coordinates are
read and written (the L2 shrink is the one dense operation).
"""

import enum
from dataclasses import dataclass

import numpy as np

from .._random import make_rng
from ._base import BinaryClassifier, TrainConfig, align_features, as_matrix, check_training_set


class LinearKind(enum.Enum):
    LOGISTIC = "logistic"
    LINEAR_SVM = "linear_svm"
    PASSIVE_AGGRESSIVE = "passive_aggressive"


@dataclass(frozen=True)
class LinearModel:
    weights: np.ndarray
    bias: float
    kind: LinearKind
    objective_trace: tuple = ()

    def __post_init__(self):
        if not (np.all(np.isfinite(self.weights)) and np.isfinite(self.bias)):
            raise ValueError("non-finite linear model parameters")

    @property
    def n_features(self):
        return self.weights.shape[0]

    def decision_function(self, X):
        X = align_features(as_matrix(X), self.n_features)
        return np.asarray(X @ self.weights).ravel() + self.bias


def _log1pexp(z):
    return np.logaddexp(0.0, z)


def _sigmoid(z):
    return np.exp(-np.logaddexp(0.0, -z))


def logistic_objective(w, b, X, y, l2):
    """Mean log-loss plus ``(l2/2)||w||^2`` and its gradient ``(dw, db)``."""
    X = as_matrix(X)
    margins = y * (np.asarray(X @ w).ravel() + b)
    loss = float(np.mean(_log1pexp(-margins))) + 0.5 * l2 * float(w @ w)
    coef = -y * _sigmoid(-margins) / X.shape[0]
    grad_w = np.asarray(X.T @ coef).ravel() + l2 * w
    return loss, grad_w, float(coef.sum())


def hinge_objective(w, b, X, y, l2):
    X = as_matrix(X)
    margins = y * (np.asarray(X @ w).ravel() + b)
    return float(np.mean(np.maximum(0.0, 1.0 - margins))) + 0.5 * l2 * float(w @ w)


def passive_aggressive_update(w, b, indices, values, y, C):
    """One PA-I step on example ``(x, y)``; updates ``w`` in place.

    The bias acts as an extra constant-1 feature, hence ``||x||^2 + 1``.
    Returns ``(new_bias, tau)``.
    """
    margin = y * (float(w[indices] @ values) + b)
    loss = max(0.0, 1.0 - margin)
    if loss == 0.0:
        return b, 0.0
    tau = min(C, loss / (float(values @ values) + 1.0))
    w[indices] += tau * y * values
    return b + tau * y, tau


def _sgd(X, y, cfg, step, kind, average, objective=None):
    n, d = X.shape
    w = np.zeros(d)
    b = 0.0
    w_sum = np.zeros(d) if average else None
    b_sum = 0.0
    n_steps = 0
    rng = make_rng(cfg.seed)
    indptr, indices, data = X.indptr, X.indices, X.data
    trace = []
    if objective is not None:
        trace.append(objective(w, b))
    for _ in range(cfg.epochs):
        for i in rng.permutation(n):
            lo, hi = indptr[i], indptr[i + 1]
            b = step(w, b, indices[lo:hi], data[lo:hi], y[i])
            if average:
                w_sum += w
                b_sum += b
                n_steps += 1
        if objective is not None:
            if average:
                trace.append(objective(w_sum / n_steps, b_sum / n_steps))
            else:
                trace.append(objective(w, b))
    if average:
        w, b = w_sum / n_steps, b_sum / n_steps
    return LinearModel(weights=w, bias=float(b), kind=kind, objective_trace=tuple(trace))


def train_passive_aggressive(X, y, cfg=TrainConfig(), average=False):
    X = as_matrix(X)
    y = np.asarray(y, dtype=np.float64)
    check_training_set(X, y)

    def step(w, b, idx, val, yi):
        return passive_aggressive_update(w, b, idx, val, yi, cfg.C)[0]

    return _sgd(X, y, cfg, step, LinearKind.PASSIVE_AGGRESSIVE, average)


def train_logistic(X, y, cfg=TrainConfig(), average=False, record_objective=False):
    X = as_matrix(X)
    y = np.asarray(y, dtype=np.float64)
    check_training_set(X, y)
    lr, l2 = cfg.learning_rate, cfg.l2

    def step(w, b, idx, val, yi):
        margin = yi * (float(w[idx] @ val) + b)
        g = -yi * float(_sigmoid(-margin))
        if l2:
            w *= 1.0 - lr * l2
        w[idx] -= lr * g * val
        return b - lr * g

    objective = (lambda w, b: logistic_objective(w, b, X, y, l2)[0]) if record_objective else None
    return _sgd(X, y, cfg, step, LinearKind.LOGISTIC, average, objective)


def train_linear_svm(X, y, cfg=TrainConfig(), average=False, record_objective=False):
    X = as_matrix(X)
    y = np.asarray(y, dtype=np.float64)
    check_training_set(X, y)
    lr, l2 = cfg.learning_rate, cfg.l2

    def step(w, b, idx, val, yi):
        margin = yi * (float(w[idx] @ val) + b)
        if l2:
            w *= 1.0 - lr * l2
        if margin < 1.0:
            w[idx] += lr * yi * val
            return b + lr * yi
        return b

    objective = (lambda w, b: hinge_objective(w, b, X, y, l2)) if record_objective else None
    return _sgd(X, y, cfg, step, LinearKind.LINEAR_SVM, average, objective)


class _LinearEstimator(BinaryClassifier):
    @property
    def coef_(self):
        return self.model_.weights

    @property
    def intercept_(self):
        return self.model_.bias

    def _config(self):
        return TrainConfig(
            epochs=self.epochs,
            learning_rate=getattr(self, "learning_rate", 0.1),
            l2=getattr(self, "l2", 1e-4),
            C=getattr(self, "C", 1.0),
            seed=self.seed,
        )


class PassiveAggressiveClassifier(_LinearEstimator):
    """PA-I online learner with an implicit bias feature.

    Parameters
    ----------
    C : float, default=1.0
        Cap on the step size.
    epochs : int, default=5
    seed : int, default=0
        Seeds the per-epoch shuffles.
    average : bool, default=False
        Return the average of all iterates instead of the last one.
    """

    def __init__(self, C=1.0, epochs=5, seed=0, average=False):
        self.C = C
        self.epochs = epochs
        self.seed = seed
        self.average = average

    def _train(self, X, signs):
        return train_passive_aggressive(X, signs, self._config(), average=self.average)


class LogisticRegression(_LinearEstimator):
    """L2-regularized logistic regression fitted by constant-step SGD.

    Parameters
    ----------
    learning_rate : float, default=0.1
    l2 : float, default=1e-4
        Weight decay; the bias is not regularized.
    epochs : int, default=5
    seed : int, default=0
    average : bool, default=True
        Return the average of all iterates (averaged SGD).
    """

    def __init__(self, learning_rate=0.1, l2=1e-4, epochs=5, seed=0, average=True):
        self.learning_rate = learning_rate
        self.l2 = l2
        self.epochs = epochs
        self.seed = seed
        self.average = average

    def _train(self, X, signs):
        return train_logistic(X, signs, self._config(), average=self.average)


class LinearSVM(_LinearEstimator):
    """Hinge-loss linear SVM fitted by subgradient SGD.

    Parameters are as for :class:`LogisticRegression`.
    """

    def __init__(self, learning_rate=0.1, l2=1e-4, epochs=5, seed=0, average=True):
        self.learning_rate = learning_rate
        self.l2 = l2
        self.epochs = epochs
        self.seed = seed
        self.average = average

    def _train(self, X, signs):
        return train_linear_svm(X, signs, self._config(), average=self.average)
