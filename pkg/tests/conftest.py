from pathlib import Path

import numpy as np
import pytest

from veridict.corpus import Corpus, Label, Review, load_csv

ROOT = Path(__file__).resolve().parents[1]
FIXTURE_CSV = ROOT / "fixtures" / "mini_corpus.csv"


@pytest.fixture(scope="session")
def fixture_csv():
    return FIXTURE_CSV


@pytest.fixture(scope="session")
def mini_corpus():
    return load_csv(FIXTURE_CSV)


def random_corpus(rng, n_truthful, n_deceptive, vocab=("alpha", "beta", "gamma", "delta", "room", "staff")):
    """Shuffled corpus of short random texts with the given class sizes."""
    labels = [Label.TRUTHFUL] * n_truthful + [Label.DECEPTIVE] * n_deceptive
    rng.shuffle(labels)
    reviews = []
    for i, lab in enumerate(labels):
        words = rng.choice(vocab, size=int(rng.integers(1, 8)))
        reviews.append(Review(id=i, text=" ".join(words), label=lab))
    return Corpus(tuple(reviews))


def keyword_corpus(n_per_class=20, seed=0):
    """Separable corpus: every deceptive text holds "fabulous", every truthful one "carpet"."""
    rng = np.random.default_rng(seed)
    filler = ["room", "hotel", "night", "desk", "view", "breakfast", "lobby", "street"]
    reviews = []
    for i in range(2 * n_per_class):
        lab = Label.DECEPTIVE if i % 2 else Label.TRUTHFUL
        key = "fabulous" if lab is Label.DECEPTIVE else "carpet"
        words = list(rng.choice(filler, size=5)) + [key, key]
        rng.shuffle(words)
        reviews.append(Review(id=i, text=" ".join(words), label=lab))
    return Corpus(tuple(reviews))


# acceptance criterion number -> (status, description, detail)
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        status, title, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.line(f"[{status}] criterion {number:2d}: {title} -- {detail}")
