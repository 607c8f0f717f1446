"""The five review classifiers, as functional trainers and sklearn estimators."""


from ._base import TrainConfig, as_matrix, encode_labels, scores_to_signs
from .kernel_svm import KernelSVM, KernelSVMModel, rbf_kernel, train_kernel_svm
from .linear import (
    LinearKind,
    LinearModel,
    LinearSVM,
    LogisticRegression,
    PassiveAggressiveClassifier,
    logistic_objective,
    passive_aggressive_update,
    train_linear_svm,
    train_logistic,
    train_passive_aggressive,
)
from .naive_bayes import MultinomialNB, NBModel, train_multinomial_nb

CLASSIFIER_KINDS = ("lr", "lsvm", "pa", "nb", "svm")


def make_classifier(kind, cfg=TrainConfig()):
    """Estimator for a short classifier name, configured from ``cfg``."""
    if kind == "pa":
        return PassiveAggressiveClassifier(C=cfg.C, epochs=cfg.epochs, seed=cfg.seed)
    if kind == "lr":
        return LogisticRegression(learning_rate=cfg.learning_rate, l2=cfg.l2, epochs=cfg.epochs, seed=cfg.seed)
    if kind == "lsvm":
        return LinearSVM(learning_rate=cfg.learning_rate, l2=cfg.l2, epochs=cfg.epochs, seed=cfg.seed)
    if kind == "nb":
        return MultinomialNB(alpha=cfg.alpha)
    if kind == "svm":
        return KernelSVM(C=cfg.C, gamma=cfg.gamma, tol=cfg.tolerance)
    raise ValueError(f"unknown classifier {kind!r}; choose from {CLASSIFIER_KINDS}")


def decision_function(model, X):
    """Real-valued score; positive means deceptive."""
    return model.decision_function(as_matrix(X))


def predict(model, X):
    """+1 (deceptive) / -1 (truthful) per row; a zero score counts as deceptive."""
    return scores_to_signs(decision_function(model, X))


__all__ = [
    "CLASSIFIER_KINDS", "KernelSVM", "KernelSVMModel", "LinearKind", "LinearModel",
    "LinearSVM", "LogisticRegression", "MultinomialNB", "NBModel",
    "PassiveAggressiveClassifier", "TrainConfig", "decision_function", "encode_labels",
    "logistic_objective", "make_classifier", "passive_aggressive_update", "predict",
    "rbf_kernel", "train_kernel_svm", "train_linear_svm", "train_logistic",
    "train_multinomial_nb", "train_passive_aggressive",
]
