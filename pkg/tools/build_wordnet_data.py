"""Regenerate the shipped lemma-exception and synonym tables from WordNet 3.0.

Usage::

    python tools/build_wordnet_data.py /path/to/wordnet-3.0 src/veridict/data

The WordNet 3.0 database files (index.sense, data.*, verb.exc, noun.exc) are
distributed by Princeton under the WordNet license, reproduced in
``src/veridict/data/WORDNET_LICENSE``. One convenient copy ships inside the
``wn==0.0.23`` source distribution on PyPI (``wn/data/wordnet-3.0``).
"""

import sys
from collections import defaultdict
from pathlib import Path

N_HEADWORDS = 2000
MAX_SYNONYMS = 6
SENSES_PER_WORD = 2
POS_FILES = {"n": "data.noun", "v": "data.verb", "a": "data.adj", "s": "data.adj", "r": "data.adv"}
SS_TYPES = {"1": "n", "2": "v", "3": "a", "4": "r", "5": "s"}

# Surface forms that are base words in their own right but are common
# irregular inflections in review text.
EXTRA_EXCEPTIONS = {
    "made": "make", "found": "find", "left": "leave", "saw": "see", "felt": "feel",
    "used": "use", "using": "use", "dining": "dine", "writing": "write",
}
# Words the suffix rules would mangle; each maps to itself.
PROTECTED = [
    "morning", "evening", "ceiling", "nothing", "something", "anything",
    "everything", "wedding", "bedding", "spring", "string", "news", "always",
    "perhaps", "towards", "afterwards", "series", "species", "thanks",
    "upstairs", "downstairs", "sometimes", "whereas", "lens", "chaos",
]


def is_word(w):
    return w.isascii() and w.isalpha() and w.islower()


def read_stopwords(path):
    return {
        line.strip()
        for line in path.read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.startswith("#")
    }


def index_lemmas(wn_dir, pos):
    return {
        line.split(" ", 1)[0]
        for line in (wn_dir / f"index.{pos}").read_text(encoding="latin-1").splitlines()
        if not line.startswith(" ")
    }


def build_exceptions(wn_dir):
    table = {}
    for pos in ("verb", "noun"):
        base_forms = index_lemmas(wn_dir, pos)
        for line in (wn_dir / f"{pos}.exc").read_text(encoding="latin-1").splitlines():
            parts = line.split()
            if len(parts) < 2:
                continue
            surface, lemma = parts[0], parts[1]
            if not (is_word(surface) and is_word(lemma)) or surface == lemma:
                continue
            # surface forms that are base words of the same part of speech stay
            if surface in base_forms or surface in table:
                continue
            table[surface] = lemma
    table.update(EXTRA_EXCEPTIONS)
    for word in PROTECTED:
        table[word] = word
    return table


def synset_lemmas(wn_dir):
    # index by the offset field rather than seeking: some redistributions
    # convert line endings, which invalidates the byte offsets
    table = {}
    for pos, fname in POS_FILES.items():
        if pos == "s":
            continue
        for line in (wn_dir / fname).read_text(encoding="latin-1").splitlines():
            if line.startswith(" "):
                continue
            fields = line.split()
            n_words = int(fields[3], 16)
            words = [fields[4 + 2 * i].lower().split("(")[0] for i in range(n_words)]
            table[(fname, fields[0])] = words

    def lookup(pos, offset):
        return table[(POS_FILES[pos], offset)]

    return lookup


def build_synonyms(wn_dir, stopwords):
    tag_counts = defaultdict(int)
    senses = defaultdict(list)
    for line in (wn_dir / "index.sense").read_text(encoding="latin-1").splitlines():
        key, offset, sense_no, count = line.split()
        word, rest = key.split("%", 1)
        if not is_word(word) or len(word) < 3 or word in stopwords:
            continue
        pos = SS_TYPES[rest[0]]
        tag_counts[word] += int(count)
        senses[word].append((int(count), -int(sense_no), pos, offset))

    lookup = synset_lemmas(wn_dir)
    lexicon = {}
    for word in sorted(tag_counts, key=lambda w: (-tag_counts[w], w)):
        syns = []
        for _, _, pos, offset in sorted(senses[word], reverse=True)[:SENSES_PER_WORD]:
            for cand in lookup(pos, offset):
                if is_word(cand) and cand != word and cand not in stopwords and cand not in syns:
                    syns.append(cand)
        if syns:
            lexicon[word] = syns[:MAX_SYNONYMS]
        if len(lexicon) == N_HEADWORDS:
            break
    return lexicon


def main(argv):
    wn_dir, out_dir = Path(argv[1]), Path(argv[2])
    stopwords = read_stopwords(out_dir / "stopwords.txt")
    exceptions = build_exceptions(wn_dir)
    with open(out_dir / "lemma_exceptions.tsv", "w", encoding="utf-8") as fh:
        fh.write("# surface<TAB>lemma; irregular forms from WordNet 3.0 verb.exc/noun.exc\n")
        for surface in sorted(exceptions):
            fh.write(f"{surface}\t{exceptions[surface]}\n")
    lexicon = build_synonyms(wn_dir, stopwords)
    with open(out_dir / "synonyms.tsv", "w", encoding="utf-8") as fh:
        fh.write("# headword<TAB>syn1,syn2,...; derived from WordNet 3.0 synsets\n")
        for word in sorted(lexicon):
            fh.write(f"{word}\t{','.join(lexicon[word])}\n")
    print(f"{len(exceptions)} exceptions, {len(lexicon)} synonym headwords")


if __name__ == "__main__":
    main(sys.argv)
