"""Review corpus ingestion and deterministic train/test partitioning."""

import csv
import enum
import functools
import io
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from ._io import atomic_write_text
from ._random import make_rng
from .exceptions import (
    BadFractionError,
    BadKError,
    BadLabelError,
    CorpusError,
    EmptyCorpusError,
    MissingColumnError,
    TooSmallClassError,
)

CSV_COLUMNS = ("deceptive", "hotel", "polarity", "source", "text")


@functools.total_ordering
class Label(enum.Enum):
    """Review class; ordered truthful < deceptive to match ``classes_``."""

    TRUTHFUL = "truthful"
    DECEPTIVE = "deceptive"

    def __lt__(self, other):
        if not isinstance(other, Label):
            return NotImplemented
        return self.sign < other.sign

    @property
    def sign(self):
        """Margin encoding used by the classifiers: +1 deceptive, -1 truthful."""
        return 1 if self is Label.DECEPTIVE else -1

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(f"not a review label: {value!r}") from None


class Polarity(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


@dataclass(frozen=True)
class Review:
    id: int
    text: str
    label: Label
    polarity: Optional[Polarity] = None
    hotel: Optional[str] = None
    source: Optional[str] = None
    parent_id: Optional[int] = None

    def __post_init__(self):
        if not self.text.strip():
            raise CorpusError(f"review {self.id}: empty text")
        if not isinstance(self.label, Label):
            raise CorpusError(f"review {self.id}: label must be a Label, got {self.label!r}")


@dataclass(frozen=True)
class Corpus:
    reviews: tuple
    label_counts: dict = field(init=False, compare=False)

    def __post_init__(self):
        reviews = tuple(self.reviews)
        object.__setattr__(self, "reviews", reviews)
        ids = [r.id for r in reviews]
        if len(set(ids)) != len(ids):
            raise CorpusError("review ids must be unique")
        counts = Counter(r.label for r in reviews)
        object.__setattr__(self, "label_counts", {lab: counts.get(lab, 0) for lab in Label})

    def __len__(self):
        return len(self.reviews)

    def __iter__(self):
        return iter(self.reviews)

    @property
    def ids(self):
        return [r.id for r in self.reviews]

    @property
    def texts(self):
        return [r.text for r in self.reviews]

    @property
    def labels(self):
        return [r.label for r in self.reviews]

    def subset(self, ids):
        wanted = set(ids)
        return Corpus(tuple(r for r in self.reviews if r.id in wanted))


@dataclass(frozen=True)
class SplitConfig:
    test_fraction: float = 0.2
    k: int = 5
    seed: int = 0
    stratified: bool = True

    def __post_init__(self):
        if not 0.0 < self.test_fraction < 1.0:
            raise BadFractionError(f"test_fraction must lie in (0, 1), got {self.test_fraction}")
        if self.k < 2:
            raise BadKError(f"k must be >= 2, got {self.k}")


def _optional(value, enum_cls=None):
    value = (value or "").strip()
    if not value:
        return None
    if enum_cls is None:
        return value
    try:
        return enum_cls(value.lower())
    except ValueError:
        return None


def read_csv(fh):
    reader = csv.DictReader(fh)
    if reader.fieldnames is None:
        raise EmptyCorpusError("CSV has no header row")
    columns = {name.strip().lower(): name for name in reader.fieldnames}
    for required in ("deceptive", "text"):
        if required not in columns:
            raise MissingColumnError(required)

    def get(row, name):
        key = columns.get(name)
        return row.get(key) if key is not None else None

    reviews = []
    for i, row in enumerate(reader):
        raw_label = get(row, "deceptive")
        try:
            label = Label.parse(raw_label)
        except ValueError:
            raise BadLabelError(i + 1, raw_label) from None
        text = get(row, "text") or ""
        if not text.strip():
            raise CorpusError(f"row {i + 1}: empty review text")
        parent = _optional(get(row, "parent_id"))
        reviews.append(
            Review(
                id=i,
                text=text,
                label=label,
                polarity=_optional(get(row, "polarity"), Polarity),
                hotel=_optional(get(row, "hotel")),
                source=_optional(get(row, "source")),
                parent_id=int(parent) if parent is not None else None,
            )
        )
    if not reviews:
        raise EmptyCorpusError("CSV contains no data rows")
    return Corpus(tuple(reviews))


def load_csv(path):
    """Load a corpus CSV with (at least) ``deceptive`` and ``text`` columns.

    Review ids are the zero-based data-row positions.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        return read_csv(fh)


def corpus_to_csv(corpus):
    with_parent = any(r.parent_id is not None for r in corpus)
    columns = list(CSV_COLUMNS) + (["parent_id"] if with_parent else [])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in corpus:
        row = [
            r.label.value,
            r.hotel or "",
            r.polarity.value if r.polarity else "",
            r.source or "",
            r.text,
        ]
        if with_parent:
            row.append("" if r.parent_id is None else str(r.parent_id))
        writer.writerow(row)
    return buf.getvalue()


def write_csv(corpus, path):
    atomic_write_text(path, corpus_to_csv(corpus))


def _apportion(sizes, total):
    """Split ``total`` across groups proportionally to ``sizes`` (largest remainder).

    Every share is within 1 of its exact quota and the shares sum to ``total``.
    """
    n = sum(sizes)
    quotas = [s * total / n for s in sizes]
    shares = [math.floor(q) for q in quotas]
    short = total - sum(shares)
    by_remainder = sorted(range(len(sizes)), key=lambda g: (-(quotas[g] - shares[g]), g))
    for g in by_remainder[:short]:
        shares[g] += 1
    return shares


def _groups(corpus, cfg):
    if cfg.stratified:
        return [[r.id for r in corpus if r.label is lab] for lab in Label]
    return [corpus.ids]


def train_test_split(corpus, cfg=SplitConfig()):
    """Seeded hold-out split; returns ``(train, test)``.

    ``|test| = round(test_fraction * N)``. In stratified mode the test share
    of each class is apportioned so per-class counts stay within one review of
    the exact class ratio.
    """
    n = len(corpus)
    if n == 0:
        raise EmptyCorpusError("cannot split an empty corpus")
    n_test = math.floor(cfg.test_fraction * n + 0.5)
    if not 0 < n_test < n:
        raise BadFractionError(
            f"test_fraction {cfg.test_fraction} on {n} reviews leaves an empty part"
        )
    groups = [g for g in _groups(corpus, cfg) if g]
    if cfg.stratified:
        min_size = math.ceil(1.0 / cfg.test_fraction - 1e-9)
        for lab in Label:
            count = corpus.label_counts[lab]
            if 0 < count < min_size:
                raise TooSmallClassError(
                    f"class {lab.value} has {count} reviews; stratified split needs >= {min_size}"
                )
    shares = _apportion([len(g) for g in groups], n_test)
    rng = make_rng(cfg.seed)
    test_ids = set()
    for ids, share in zip(groups, shares):
        perm = rng.permutation(len(ids))
        test_ids.update(ids[p] for p in perm[:share])
    train = Corpus(tuple(r for r in corpus if r.id not in test_ids))
    test = Corpus(tuple(r for r in corpus if r.id in test_ids))
    return train, test


def kfold_split(corpus, cfg=SplitConfig()):
    """Seeded k-fold partition; returns a list of ``k`` ``(train, test)`` pairs.

    Members of each class are shuffled and dealt round-robin into the folds,
    continuing the deal across classes, so fold sizes differ by at most one
    overall and per class.
    """
    n = len(corpus)
    if not 2 <= cfg.k <= n:
        raise BadKError(f"k must lie in [2, {n}], got {cfg.k}")
    rng = make_rng(cfg.seed)
    order = []
    for ids in _groups(corpus, cfg):
        perm = rng.permutation(len(ids))
        order.extend(ids[p] for p in perm)
    fold_of = {rid: pos % cfg.k for pos, rid in enumerate(order)}
    folds = []
    for f in range(cfg.k):
        train = Corpus(tuple(r for r in corpus if fold_of[r.id] != f))
        test = Corpus(tuple(r for r in corpus if fold_of[r.id] == f))
        folds.append((train, test))
    return folds
