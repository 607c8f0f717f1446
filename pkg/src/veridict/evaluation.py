"""Experiment orchestration: hold-out, k-fold, grid sweeps and comparison tables."""

import enum
import itertools
import time
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np
from joblib import Parallel, delayed
from sklearn.pipeline import Pipeline

from .augment import AugmentConfig, augment_corpus
from .classifiers import CLASSIFIER_KINDS, TrainConfig, make_classifier
from .corpus import Label, SplitConfig, kfold_split, train_test_split
from .exceptions import VeridictError
from .features import FeatureConfig, FeatureMode, NgramRange, NgramVectorizer
from .textprep import TextPreprocessor

DEFAULT_RANGES = ((1, 1), (1, 2), (1, 3), (1, 4))
DEFAULT_MAX_FEATURES = (1000, 5000, 11000, 20000, 35000, 50000)
DEFAULT_MODES = ("count", "tfidf")

# reference rows from prior work on the same corpus
BASELINES = (
    ("Support Vector Machine", "LIWC + Bigram", 0.89, "Ott et al."),
    ("Linear Support Vector Machine", "TF-IDF Vectorizer", 0.90, "Ahmed et al."),
)
CLASSIFIER_NAMES = {
    "lr": "Logistic Regression",
    "lsvm": "Linear Support Vector Machine",
    "pa": "Passive Aggressive Classifier",
    "nb": "Multinomial Naive Bayes",
    "svm": "Support Vector Machine",
}
MODE_NAMES = {"count": "Count Vectorizer", "tfidf": "TF-IDF Vectorizer"}


class Protocol(enum.Enum):
    HOLDOUT = "holdout"
    KFOLD = "kfold"


@dataclass(frozen=True)
class ExperimentConfig:
    feature: FeatureConfig = FeatureConfig()
    classifier: str = "pa"
    train: TrainConfig = TrainConfig()
    split: SplitConfig = SplitConfig()
    protocol: Protocol = Protocol.HOLDOUT
    augment: Optional[AugmentConfig] = None

    def __post_init__(self):
        if self.classifier not in CLASSIFIER_KINDS:
            raise ValueError(f"unknown classifier {self.classifier!r}; choose from {sorted(CLASSIFIER_KINDS)}")
        object.__setattr__(self, "protocol", Protocol(self.protocol))

    @property
    def seed(self):
        return self.split.seed

    def to_dict(self):
        out = asdict(self)
        out["feature"]["ngram_range"] = list(self.feature.ngram_range)
        out["feature"]["mode"] = self.feature.mode.value
        out["protocol"] = self.protocol.value
        return out

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        feature = dict(data.get("feature", {}))
        if "ngram_range" in feature:
            feature["ngram_range"] = NgramRange.coerce(feature["ngram_range"])
        aug = data.get("augment")
        return cls(
            feature=FeatureConfig(**feature),
            classifier=data.get("classifier", "pa"),
            train=TrainConfig(**data.get("train", {})),
            split=SplitConfig(**data.get("split", {})),
            protocol=Protocol(data.get("protocol", "holdout")),
            augment=AugmentConfig(**aug) if aug else None,
        )


@dataclass(frozen=True)
class EvalReport:
    config: ExperimentConfig
    accuracy: float
    confusion: tuple  # rows: true truthful/deceptive; cols: predicted
    wall_time: float = field(compare=False)
    seed: int
    per_fold: Optional[tuple] = None
    # fitted pipelines (one per fold); these take token lists, not raw text
    models: tuple = field(default=(), compare=False, repr=False)

    @property
    def n_test(self):
        return sum(sum(row) for row in self.confusion)


@dataclass(frozen=True)
class SweepRow:
    feature: FeatureConfig
    classifier: str
    protocol: Protocol
    accuracy: float
    seed: int
    wall_time: float = field(default=0.0, compare=False)
    error: Optional[str] = None

    @property
    def failed(self):
        return self.error is not None


@dataclass(frozen=True)
class SweepResult:
    rows: tuple
    grid_shape: tuple = field(default=())

    def best(self):
        ok = [r for r in self.rows if not r.failed]
        return ok[0] if ok else None


def accuracy(predictions, truth):
    predictions = list(predictions)
    truth = list(truth)
    if len(predictions) != len(truth):
        raise ValueError(f"length mismatch: {len(predictions)} predictions, {len(truth)} labels")
    if not truth:
        raise ValueError("accuracy of an empty prediction list is undefined")
    return sum(p == t for p, t in zip(predictions, truth)) / len(truth)


def confusion_matrix(predictions, truth):
    order = {Label.TRUTHFUL: 0, Label.DECEPTIVE: 1}
    m = [[0, 0], [0, 0]]
    for p, t in zip(predictions, truth):
        m[order[t]][order[p]] += 1
    return tuple(tuple(row) for row in m)


class DocumentCache:
    """Memoized text -> token list preprocessing shared across experiments."""

    def __init__(self, preprocessor=None):
        self.preprocessor = (preprocessor or TextPreprocessor()).fit(None)
        self._cache = {}

    def __call__(self, reviews):
        missing = [r.text for r in reviews if r.text not in self._cache]
        if missing:
            for text, tokens in zip(missing, self.preprocessor.transform(missing)):
                self._cache[text] = tokens
        return [self._cache[r.text] for r in reviews]


def build_pipeline(cfg, tokenized=False):
    """Vectorizer + classifier pipeline, prefixed by the preprocessor unless ``tokenized``."""
    steps = [
        ("vec", NgramVectorizer.from_config(cfg.feature)),
        ("clf", make_classifier(cfg.classifier, cfg.train)),
    ]
    if not tokenized:
        steps.insert(0, ("prep", TextPreprocessor()))
    return Pipeline(steps)


def _fit_predict(cfg, train, test, docs):
    pipe = build_pipeline(cfg, tokenized=True)
    pipe.fit(docs(train.reviews), train.labels)
    return list(pipe.predict(docs(test.reviews))), pipe


def _augment_train(cfg, train, test, lexicon):
    if cfg.augment is None:
        return train
    if lexicon is None:
        raise ValueError("augmentation requested without a lexicon")
    augmented = augment_corpus(train, lexicon, cfg.augment)
    test_ids = set(test.ids)
    leaked = [r.id for r in augmented if r.parent_id is not None and r.parent_id in test_ids]
    if leaked:
        raise VeridictError(f"augmented reviews derived from test reviews: {leaked[:5]}")
    return augmented


def evaluate_holdout(corpus, cfg, lexicon=None, docs=None):
    """Fit features and classifier on the training part only; score the test part."""
    docs = docs or DocumentCache()
    start = time.perf_counter()
    train, test = train_test_split(corpus, cfg.split)
    train = _augment_train(cfg, train, test, lexicon)
    pred, pipe = _fit_predict(cfg, train, test, docs)
    truth = test.labels
    return EvalReport(
        config=cfg,
        accuracy=accuracy(pred, truth),
        confusion=confusion_matrix(pred, truth),
        wall_time=time.perf_counter() - start,
        seed=cfg.seed,
        models=(pipe,),
    )


def evaluate_kfold(corpus, cfg, lexicon=None, docs=None):
    """Refit everything per fold; accuracy is the mean of the fold accuracies.

    The confusion matrix pools all folds, so it matches ``accuracy`` exactly
    only when the folds have equal size.
    """
    docs = docs or DocumentCache()
    start = time.perf_counter()
    per_fold = []
    models = []
    pooled = np.zeros((2, 2), dtype=int)
    for train, test in kfold_split(corpus, cfg.split):
        train = _augment_train(cfg, train, test, lexicon)
        pred, pipe = _fit_predict(cfg, train, test, docs)
        models.append(pipe)
        per_fold.append(accuracy(pred, test.labels))
        pooled += np.array(confusion_matrix(pred, test.labels))
    return EvalReport(
        config=cfg,
        accuracy=sum(per_fold) / len(per_fold),
        confusion=tuple(tuple(int(v) for v in row) for row in pooled),
        wall_time=time.perf_counter() - start,
        seed=cfg.seed,
        per_fold=tuple(per_fold),
        models=tuple(models),
    )


def evaluate(corpus, cfg, lexicon=None, docs=None):
    if cfg.protocol is Protocol.KFOLD:
        return evaluate_kfold(corpus, cfg, lexicon, docs)
    return evaluate_holdout(corpus, cfg, lexicon, docs)


def _sweep_cells(feature, classifiers, base, train_parts, docs):
    """Evaluate every classifier on one feature configuration (shared vectors)."""
    rows = []
    try:
        encoded = []
        for train, test in train_parts:
            vec = NgramVectorizer.from_config(feature)
            t0 = time.perf_counter()
            X_train = vec.fit_transform(docs(train.reviews))
            X_test = vec.transform(docs(test.reviews))
            encoded.append((X_train, train.labels, X_test, test.labels, time.perf_counter() - t0))
    except Exception as exc:  # noqa: BLE001 - a failed cell must not end the sweep
        return [
            SweepRow(feature, kind, base.protocol, float("nan"), base.seed, 0.0, f"{type(exc).__name__}: {exc}")
            for kind in classifiers
        ]
    for kind in classifiers:
        start = time.perf_counter()
        try:
            accs = []
            vec_time = 0.0
            for X_train, y_train, X_test, y_test, t_vec in encoded:
                clf = make_classifier(kind, base.train).fit(X_train, y_train)
                accs.append(accuracy(clf.predict(X_test), y_test))
                vec_time += t_vec
            rows.append(
                SweepRow(
                    feature, kind, base.protocol, sum(accs) / len(accs), base.seed,
                    time.perf_counter() - start + vec_time,
                )
            )
        except Exception as exc:  # noqa: BLE001
            rows.append(
                SweepRow(feature, kind, base.protocol, float("nan"), base.seed,
                         time.perf_counter() - start, f"{type(exc).__name__}: {exc}")
            )
    return rows


def sweep(
    corpus,
    ranges=DEFAULT_RANGES,
    max_features=DEFAULT_MAX_FEATURES,
    modes=DEFAULT_MODES,
    classifiers=tuple(CLASSIFIER_NAMES),
    split=SplitConfig(),
    train=TrainConfig(),
    protocol=Protocol.HOLDOUT,
    norm="auto",
    n_jobs=1,
):
    """Evaluate the full grid on one shared split; rows sorted by accuracy, best first.

    All cells use the same split and the same training seed, so a row can be
    reproduced by a single ``evaluate`` call with the matching config.
    """
    axes = (tuple(ranges), tuple(max_features), tuple(modes), tuple(classifiers))
    if not all(axes):
        raise ValueError("every sweep axis needs at least one value")
    for kind in axes[3]:
        if kind not in CLASSIFIER_KINDS:
            raise ValueError(f"unknown classifier {kind!r}")
    protocol = Protocol(protocol)
    base = ExperimentConfig(train=train, split=split, protocol=protocol)
    if protocol is Protocol.KFOLD:
        parts = kfold_split(corpus, split)
    else:
        parts = [train_test_split(corpus, split)]
    docs = DocumentCache()
    docs(corpus.reviews)
    features = [
        FeatureConfig(ngram_range=NgramRange.coerce(rng), max_features=mf, mode=FeatureMode(mode), norm=norm)
        for rng, mf, mode in itertools.product(*axes[:3])
    ]
    chunks = Parallel(n_jobs=n_jobs)(
        delayed(_sweep_cells)(feat, axes[3], base, parts, docs) for feat in features
    )
    rows = [row for chunk in chunks for row in chunk]
    order = sorted(range(len(rows)), key=lambda i: (rows[i].failed, -_acc_key(rows[i]), i))
    return SweepResult(rows=tuple(rows[i] for i in order), grid_shape=tuple(len(a) for a in axes))


def _acc_key(row):
    return -1.0 if row.failed else row.accuracy


def report_rows(reports):
    """(model, feature, accuracy, source) rows incl. baselines, ascending accuracy."""
    rows = [(model, feat, acc, source) for model, feat, acc, source in BASELINES]
    for rep in reports:
        cfg = rep.config
        rows.append(
            (CLASSIFIER_NAMES[cfg.classifier], MODE_NAMES[cfg.feature.mode.value], rep.accuracy,
             f"this run ({cfg.protocol.value})")
        )
    # stable sort keeps baselines ahead of an equal-scoring result
    return sorted(rows, key=lambda r: r[2])


def comparison_report(reports):
    """Plain-text comparison table of results against the published baselines."""
    reports = list(reports)
    if not reports:
        raise ValueError("comparison_report needs at least one report")
    rows = report_rows(reports)
    header = ("Machine Learning model", "Feature extraction", "Accuracy", "Source")
    cells = [header] + [(m, f, f"{a * 100:.1f}%", s) for m, f, a, s in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(4)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
