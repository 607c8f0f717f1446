from dataclasses import dataclass

import numpy as np

from ._base import BinaryClassifier, TrainConfig, align_features, as_matrix, check_training_set

# row order of the per-class arrays
CLASS_SIGNS = (-1, 1)


@dataclass(frozen=True)
class NBModel:
    """Multinomial naive Bayes parameters.

    Row 0 of ``log_prior`` / ``log_likelihood`` is the truthful class (-1),
    row 1 the deceptive class (+1).
    """

    log_prior: np.ndarray
    log_likelihood: np.ndarray
    alpha: float

    @property
    def n_features(self):
        return self.log_likelihood.shape[1]

    def joint_log_likelihood(self, X):
        X = align_features(as_matrix(X), self.n_features)
        return np.asarray(X @ self.log_likelihood.T) + self.log_prior

    def decision_function(self, X):
        """Log-odds of deceptive versus truthful."""
        jll = self.joint_log_likelihood(X)
        return jll[:, 1] - jll[:, 0]


def train_multinomial_nb(X, y, cfg=TrainConfig()):
    """Laplace/Lidstone-smoothed multinomial NB on nonnegative (soft) counts."""
    X = as_matrix(X)
    y = np.asarray(y, dtype=np.float64)
    check_training_set(X, y)
    if X.nnz and X.data.min() < 0:
        raise ValueError("multinomial naive Bayes needs nonnegative feature values")
    n, d = X.shape
    priors = np.empty(2)
    likelihood = np.empty((2, d))
    for row, s in enumerate(CLASS_SIGNS):
        mask = y == s
        priors[row] = np.log(mask.sum() / n)
        counts = np.asarray(X[mask].sum(axis=0)).ravel()
        likelihood[row] = np.log((counts + cfg.alpha) / (counts.sum() + cfg.alpha * d))
    return NBModel(log_prior=priors, log_likelihood=likelihood, alpha=cfg.alpha)


class MultinomialNB(BinaryClassifier):
    """Multinomial naive Bayes.

    Parameters
    ----------
    alpha : float, default=1.0
        Additive smoothing.
    """

    def __init__(self, alpha=1.0):
        self.alpha = alpha

    def _train(self, X, signs):
        return train_multinomial_nb(X, signs, TrainConfig(alpha=self.alpha))
