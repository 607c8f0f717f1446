"""Synonym-replacement augmentation of training reviews."""

import math
import re
from dataclasses import dataclass, replace
from importlib import resources

from ._random import make_rng
from .corpus import Corpus
from .exceptions import LexiconParseError
from .textprep import StopwordList

_WORD = re.compile(r"[A-Za-z]+")


@dataclass(frozen=True)
class SynonymLexicon:
    synonyms: dict

    def __post_init__(self):
        table = {}
        for head, syns in self.synonyms.items():
            syns = tuple(syns)
            if head != head.lower() or any(s != s.lower() for s in syns):
                raise ValueError(f"lexicon entry {head!r} is not lowercase")
            if not syns:
                raise ValueError(f"lexicon entry {head!r} has no synonyms")
            if head in syns:
                raise ValueError(f"lexicon entry {head!r} lists itself as a synonym")
            table[head] = syns
        object.__setattr__(self, "synonyms", table)

    def __len__(self):
        return len(self.synonyms)

    def get(self, word):
        return self.synonyms.get(word)

    @classmethod
    def default(cls):
        text = resources.files("veridict.data").joinpath("synonyms.tsv").read_text("utf-8")
        return parse_lexicon(text.splitlines())


@dataclass(frozen=True)
class AugmentConfig:
    n_aug: int = 10
    replace_fraction: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.n_aug < 1:
            raise ValueError(f"n_aug must be >= 1, got {self.n_aug}")
        if not 0.0 < self.replace_fraction <= 1.0:
            raise ValueError(f"replace_fraction must lie in (0, 1], got {self.replace_fraction}")


def parse_lexicon(lines):
    table = {}
    for n, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise LexiconParseError(n, "expected headword<TAB>syn1,syn2,...")
        head = parts[0].strip()
        syns = [s.strip() for s in parts[1].split(",") if s.strip()]
        if not head or not syns:
            raise LexiconParseError(n, "empty headword or synonym list")
        if head != head.lower() or any(s != s.lower() for s in syns):
            raise LexiconParseError(n, "entries must be lowercase")
        if head in syns:
            raise LexiconParseError(n, f"{head!r} lists itself as a synonym")
        if head in table:
            raise LexiconParseError(n, f"duplicate headword {head!r}")
        table[head] = syns
    return SynonymLexicon(table)


def load_lexicon(path):
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon(fh)


def _match_case(original, synonym):
    if original.isupper() and len(original) > 1:
        return synonym.upper()
    if original[0].isupper():
        return synonym[:1].upper() + synonym[1:]
    return synonym


def augment_text(text, lexicon, cfg, rng, stoplist=None):
    """One augmented copy of ``text`` drawn from ``rng``."""
    spans = []
    for m in _WORD.finditer(text):
        word = m.group().lower()
        if lexicon.get(word) and (stoplist is None or word not in stoplist):
            spans.append(m)
    if not spans:
        return text
    k = math.ceil(cfg.replace_fraction * len(spans))
    chosen = sorted(rng.choice(len(spans), size=k, replace=False).tolist())
    pieces = []
    last = 0
    for pos in chosen:
        m = spans[pos]
        options = lexicon.get(m.group().lower())
        syn = options[int(rng.integers(len(options)))]
        pieces.append(text[last : m.start()])
        pieces.append(_match_case(m.group(), syn))
        last = m.end()
    pieces.append(text[last:])
    return "".join(pieces)


def augment_review(review, lexicon, cfg=AugmentConfig(), stoplist=None, first_id=None):
    """``cfg.n_aug`` synonym-replaced copies of ``review``.

    Copy ``c`` draws from its own stream keyed on ``(seed, review.id, c)``.
    Copies keep label and metadata, reference the review through
    ``parent_id`` and are numbered from ``first_id`` (default: unset ids
    ``-1, -2, ...`` for the caller to renumber).
    """
    if stoplist is None:
        stoplist = StopwordList.default()
    copies = []
    for c in range(cfg.n_aug):
        rng = make_rng(cfg.seed, review.id, c)
        new_id = first_id + c if first_id is not None else -(c + 1)
        copies.append(
            replace(
                review,
                id=new_id,
                text=augment_text(review.text, lexicon, cfg, rng, stoplist),
                parent_id=review.id,
            )
        )
    return copies


def augment_corpus(train, lexicon, cfg=AugmentConfig(), stoplist=None):
    """Original training reviews followed by all their augmented copies.

    Pass the training split only. Copies get fresh ids above the largest
    training id, ordered by (parent position, copy index).
    """
    if stoplist is None:
        stoplist = StopwordList.default()
    next_id = max(train.ids) + 1
    out = list(train.reviews)
    for review in train:
        out.extend(augment_review(review, lexicon, cfg, stoplist, first_id=next_id))
        next_id += cfg.n_aug
    return Corpus(tuple(out))
