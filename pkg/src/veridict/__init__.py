"""Deceptive hotel review detection with n-gram features and linear/kernel classifiers."""

__version__ = "0.1.0"

from .augment import AugmentConfig, SynonymLexicon, augment_corpus
from .classifiers import (
    KernelSVM,
    LinearSVM,
    LogisticRegression,
    MultinomialNB,
    PassiveAggressiveClassifier,
    TrainConfig,
    make_classifier,
)
from .corpus import Corpus, Label, Polarity, Review, SplitConfig, kfold_split, load_csv, train_test_split, write_csv
from .evaluation import ExperimentConfig, Protocol, evaluate, evaluate_holdout, evaluate_kfold, sweep
from .features import FeatureConfig, FeatureMode, NgramRange, NgramVectorizer
from .persistence import ModelBundle, load_model, save_model
from .textprep import LemmaDictionary, StopwordList, TextPreprocessor, preprocess

__all__ = [
    "AugmentConfig", "Corpus", "ExperimentConfig", "FeatureConfig", "FeatureMode", "KernelSVM",
    "Label", "LemmaDictionary", "LinearSVM", "LogisticRegression", "ModelBundle", "MultinomialNB",
    "NgramRange", "NgramVectorizer", "PassiveAggressiveClassifier", "Polarity", "Protocol", "Review",
    "SplitConfig", "StopwordList", "SynonymLexicon", "TextPreprocessor", "TrainConfig",
    "augment_corpus", "evaluate", "evaluate_holdout", "evaluate_kfold", "kfold_split", "load_csv",
    "load_model", "make_classifier", "preprocess", "save_model", "sweep", "train_test_split", "write_csv",
]
