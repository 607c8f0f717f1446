"""RBF-kernel SVM trained by sequential minimal optimization.

The dual ``min 1/2 a'Qa - e'a  s.t. 0 <= a <= C, y'a = 0`` with
``Q_ij = y_i y_j K(x_i, x_j)`` is solved by repeatedly optimizing the pair
of multipliers that most violates the KKT conditions (maximal-violating
pair with second-order selection of the partner), keeping the gradient
``G = Qa - e`` up to date after each analytic two-variable update.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from ..exceptions import NoConvergenceWarning
from ._base import BinaryClassifier, TrainConfig, align_features, as_matrix, check_training_set

_TAU = 1e-12
SUPPORT_EPS = 1e-12
DEFAULT_MAX_SAMPLES = 5000


@dataclass(frozen=True)
class KernelSVMModel:
    support_vectors: sp.csr_matrix
    dual_coef: np.ndarray  # alpha_i * y_i
    bias: float
    gamma: float
    C: float
    converged: bool = True
    n_iter: int = 0

    @property
    def n_features(self):
        return self.support_vectors.shape[1]

    def decision_function(self, X):
        X = align_features(as_matrix(X), self.n_features)
        if self.support_vectors.shape[0] == 0:
            return np.full(X.shape[0], self.bias)
        K = rbf_kernel(X, self.support_vectors, self.gamma)
        return K @ self.dual_coef + self.bias


def _sq_norms(X):
    return np.asarray(X.multiply(X).sum(axis=1)).ravel()


def rbf_kernel(A, B, gamma):
    """``K[i, j] = exp(-gamma * ||A_i - B_j||^2)`` for sparse row sets."""
    A = as_matrix(A)
    B = as_matrix(B)
    cross = A @ B.T
    cross = cross.toarray() if sp.issparse(cross) else np.asarray(cross)
    d2 = _sq_norms(A)[:, None] + _sq_norms(B)[None, :] - 2.0 * cross
    np.maximum(d2, 0.0, out=d2)
    return np.exp(-gamma * d2)


def resolve_gamma(gamma, X):
    """``'scale'`` means ``1 / (n_features * Var(X))`` over all matrix entries."""
    if gamma != "scale":
        return float(gamma)
    n, d = X.shape
    total = n * d
    mean = X.sum() / total
    var = X.multiply(X).sum() / total - mean * mean
    return 1.0 / (d * var) if var > 0 else 1.0


def _select_pair(alpha, y, G, K, C, tol):
    up = ((y > 0) & (alpha < C)) | ((y < 0) & (alpha > 0))
    low = ((y > 0) & (alpha > 0)) | ((y < 0) & (alpha < C))
    score = -y * G
    if not up.any() or not low.any():
        return None
    i = int(np.flatnonzero(up)[np.argmax(score[up])])
    m = score[i]
    M = score[low].min()
    if m - M < tol:
        return None
    cand = low & (score < m)
    b = m - score[cand]
    a = K[i, i] + np.diag(K)[cand] - 2.0 * K[i, cand]
    a = np.where(a > 0, a, _TAU)
    j = int(np.flatnonzero(cand)[np.argmin(-(b * b) / a)])
    return i, j


def _update_pair(alpha, y, G, K, C, i, j):
    Qii, Qjj = K[i, i], K[j, j]
    Qij = y[i] * y[j] * K[i, j]
    ai, aj = alpha[i], alpha[j]
    if y[i] != y[j]:
        quad = max(Qii + Qjj + 2.0 * Qij, _TAU)
        delta = (-G[i] - G[j]) / quad
        diff = ai - aj
        ai += delta
        aj += delta
        if diff > 0:
            if aj < 0:
                aj, ai = 0.0, diff
        elif ai < 0:
            ai, aj = 0.0, -diff
        if diff > 0:
            if ai > C:
                ai, aj = C, C - diff
        elif aj > C:
            aj, ai = C, C + diff
    else:
        quad = max(Qii + Qjj - 2.0 * Qij, _TAU)
        delta = (G[i] - G[j]) / quad
        total = ai + aj
        ai -= delta
        aj += delta
        if total > C:
            if ai > C:
                ai, aj = C, total - C
        elif aj < 0:
            aj, ai = 0.0, total
        if total > C:
            if aj > C:
                aj, ai = C, total - C
        elif ai < 0:
            ai, aj = 0.0, total
    d_i, d_j = ai - alpha[i], aj - alpha[j]
    alpha[i], alpha[j] = ai, aj
    G += y * (K[:, i] * (y[i] * d_i) + K[:, j] * (y[j] * d_j))


def _bias(alpha, y, G, C):
    yG = y * G
    free = (alpha > 0) & (alpha < C)
    if free.any():
        rho = yG[free].mean()
    else:
        up = ((y > 0) & (alpha < C)) | ((y < 0) & (alpha > 0))
        low = ((y > 0) & (alpha > 0)) | ((y < 0) & (alpha < C))
        ub = yG[up].min() if up.any() else np.inf
        lb = yG[low].max() if low.any() else -np.inf
        rho = 0.5 * (ub + lb) if np.isfinite(ub) and np.isfinite(lb) else 0.0
    return -float(rho)


def train_kernel_svm(X, y, cfg=TrainConfig(), max_iter=None, max_samples=DEFAULT_MAX_SAMPLES):
    """Solve the RBF soft-margin dual with SMO.

    Stops once the maximal KKT violation falls below ``cfg.tolerance``; if
    ``max_iter`` pair updates are exhausted first a ``NoConvergenceWarning``
    is issued and the returned model has ``converged=False``.
    """
    X = as_matrix(X)
    y = np.asarray(y, dtype=np.float64)
    check_training_set(X, y)
    n = X.shape[0]
    if n > max_samples:
        raise ValueError(
            f"{n} training examples exceed the kernel SVM cap of {max_samples} "
            "(the dense kernel matrix grows quadratically)"
        )
    gamma = resolve_gamma(cfg.gamma, X)
    C = float(cfg.C)
    K = rbf_kernel(X, X, gamma)
    alpha = np.zeros(n)
    G = -np.ones(n)
    if max_iter is None:
        max_iter = max(100_000, 100 * n)
    converged = False
    it = 0
    while it < max_iter:
        pair = _select_pair(alpha, y, G, K, C, cfg.tolerance)
        if pair is None:
            converged = True
            break
        _update_pair(alpha, y, G, K, C, *pair)
        it += 1
    if not converged:
        warnings.warn(f"SMO hit max_iter={max_iter} before reaching tolerance", NoConvergenceWarning)
    support = np.flatnonzero(alpha > SUPPORT_EPS)
    return KernelSVMModel(
        support_vectors=sp.csr_matrix(X[support]),
        dual_coef=alpha[support] * y[support],
        bias=_bias(alpha, y, G, C),
        gamma=gamma,
        C=C,
        converged=converged,
        n_iter=it,
    )


class KernelSVM(BinaryClassifier):
    """Soft-margin SVM with an RBF kernel.

    Parameters
    ----------
    C : float, default=1.0
    gamma : float or "scale", default="scale"
        RBF width; ``"scale"`` uses ``1 / (n_features * X.var())``.
    tol : float, default=1e-3
        KKT violation tolerance for stopping.
    max_iter : int, optional
        Cap on SMO pair updates (default ``max(100000, 100 * n_samples)``).
    """

    def __init__(self, C=1.0, gamma="scale", tol=1e-3, max_iter=None):
        self.C = C
        self.gamma = gamma
        self.tol = tol
        self.max_iter = max_iter

    def _train(self, X, signs):
        cfg = TrainConfig(C=self.C, gamma=self.gamma, tolerance=self.tol)
        return train_kernel_svm(X, signs, cfg, max_iter=self.max_iter)
