"""Text normalization, tokenization, stop-word removal and lemmatization."""

import re
import unicodedata
from dataclasses import dataclass, field
from importlib import resources

from sklearn.base import BaseEstimator, TransformerMixin

from .corpus import Review

_URL = re.compile(r"(?:https?://|www\.)\S*")
_NON_ALNUM = re.compile(r"[^a-z0-9\s]")
_SPACE = re.compile(r"\s+")
_TOKEN = re.compile(r"[a-z0-9]+")
_MAX_LEMMA_PASSES = 8


@dataclass(frozen=True)
class StopwordList:
    words: frozenset

    def __post_init__(self):
        words = frozenset(self.words)
        if not words:
            raise ValueError("stop-word list is empty")
        if any(w != w.lower() for w in words):
            raise ValueError("stop words must be lowercase")
        object.__setattr__(self, "words", words)

    def __contains__(self, word):
        return word in self.words

    @classmethod
    def from_lines(cls, lines):
        words = set()
        for line in lines:
            line = line.strip()
            if line and not line.startswith("#"):
                words.add(line.lower())
        return cls(frozenset(words))

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_lines(fh)

    @classmethod
    def default(cls):
        text = resources.files("veridict.data").joinpath("stopwords.txt").read_text("utf-8")
        return cls.from_lines(text.splitlines())


@dataclass(frozen=True)
class SuffixRule:
    suffix: str
    replacement: str
    min_stem: int

    def apply(self, token):
        if not token.endswith(self.suffix):
            return None
        stem = token[: len(token) - len(self.suffix)]
        if len(stem) < self.min_stem:
            return None
        return stem + self.replacement


@dataclass(frozen=True)
class LemmaDictionary:
    """Irregular-form table plus ordered suffix rules (first match wins).

    Exception chains (a -> b, b -> c) are resolved at construction, and every
    exception target is protected from the suffix rules, so lemmatization is
    idempotent.
    """

    exceptions: dict
    suffix_rules: tuple
    _protected: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        table = {}
        for surface, lemma in self.exceptions.items():
            if surface != surface.lower() or lemma != lemma.lower():
                raise ValueError(f"lemma exception {surface!r} -> {lemma!r} is not lowercase")
            seen = {surface}
            while lemma in self.exceptions and lemma not in seen:
                seen.add(lemma)
                lemma = self.exceptions[lemma]
            table[surface] = lemma
        rules = tuple(self.suffix_rules)
        for rule in rules:
            if not rule.suffix or rule.min_stem < 1:
                raise ValueError(f"bad suffix rule {rule}")
        object.__setattr__(self, "exceptions", table)
        object.__setattr__(self, "suffix_rules", rules)
        object.__setattr__(self, "_protected", frozenset(table.values()))

    @classmethod
    def from_tables(cls, exception_lines, rule_lines):
        exceptions = {}
        for n, line in enumerate(exception_lines, 1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 2:
                raise ValueError(f"lemma exceptions line {n}: expected surface<TAB>lemma")
            exceptions[parts[0].strip()] = parts[1].strip()
        rules = []
        for n, line in enumerate(rule_lines, 1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 3:
                raise ValueError(f"suffix rules line {n}: expected suffix<TAB>replacement<TAB>min_stem_len")
            rules.append(SuffixRule(parts[0].strip(), parts[1].strip(), int(parts[2])))
        return cls(exceptions, tuple(rules))

    @classmethod
    def load(cls, exceptions_path, rules_path):
        with open(exceptions_path, encoding="utf-8") as ex, open(rules_path, encoding="utf-8") as ru:
            return cls.from_tables(ex.read().splitlines(), ru.read().splitlines())

    @classmethod
    def default(cls):
        data = resources.files("veridict.data")
        return cls.from_tables(
            data.joinpath("lemma_exceptions.tsv").read_text("utf-8").splitlines(),
            data.joinpath("suffix_rules.tsv").read_text("utf-8").splitlines(),
        )

    def _step(self, token):
        if token in self.exceptions:
            return self.exceptions[token]
        if token in self._protected:
            return token
        for rule in self.suffix_rules:
            out = rule.apply(token)
            if out is not None:
                return out
        return token


def normalize(text):
    """Lowercase, strip URLs, fold accents, map non-alphanumerics to spaces."""
    text = _URL.sub(" ", text.lower())
    text = unicodedata.normalize("NFKD", text)
    text = "".join(ch for ch in text if not unicodedata.combining(ch))
    text = _NON_ALNUM.sub(" ", text)
    return _SPACE.sub(" ", text).strip()


def tokenize(text):
    return text.split()


def remove_stopwords(tokens, stoplist):
    return [t for t in tokens if t not in stoplist]


def lemmatize(token, dictionary):
    """Map ``token`` to its lemma.

    The exception table is consulted first, then the first matching suffix
    rule. Steps repeat until the token stops changing (``buildings`` ->
    ``building`` -> ``build``) so that the result is a fixed point.
    """
    for _ in range(_MAX_LEMMA_PASSES):
        out = dictionary._step(token)
        if out == token:
            break
        token = out
    return token


@dataclass(frozen=True)
class Document:
    review_id: int
    tokens: tuple

    def __post_init__(self):
        tokens = tuple(self.tokens)
        for t in tokens:
            if not _TOKEN.fullmatch(t):
                raise ValueError(f"invalid token {t!r}")
        object.__setattr__(self, "tokens", tokens)

    def __len__(self):
        return len(self.tokens)


def preprocess_text(text, stoplist, dictionary):
    tokens = remove_stopwords(tokenize(normalize(text)), stoplist)
    lemmas = (lemmatize(t, dictionary) for t in tokens)
    # a lemma can itself be a stop word (doing -> do); drop it
    return [t for t in lemmas if t not in stoplist]


def preprocess(review, stoplist, dictionary):
    """Review -> Document: normalize, tokenize, drop stop words, lemmatize."""
    return Document(review.id, preprocess_text(review.text, stoplist, dictionary))


class TextPreprocessor(TransformerMixin, BaseEstimator):
    """Stateless transformer mapping raw texts (or Reviews) to token lists.

    Parameters
    ----------
    stoplist : StopwordList, optional
        Defaults to the bundled English list.
    lemmas : LemmaDictionary, optional
        Defaults to the bundled exceptions and suffix rules.
    """

    def __init__(self, stoplist=None, lemmas=None):
        self.stoplist = stoplist
        self.lemmas = lemmas

    def fit(self, X, y=None):
        self.stoplist_ = self.stoplist if self.stoplist is not None else StopwordList.default()
        self.lemmas_ = self.lemmas if self.lemmas is not None else LemmaDictionary.default()
        return self

    def transform(self, X):
        if not hasattr(self, "stoplist_"):
            self.fit(X)
        out = []
        for item in X:
            text = item.text if isinstance(item, Review) else item
            out.append(preprocess_text(text, self.stoplist_, self.lemmas_))
        return out
