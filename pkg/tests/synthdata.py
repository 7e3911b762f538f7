"""Synthetic segmentation corpora with a known, locally decidable rule.

Words are built from three disjoint letter pools: medial letters fill
units, one pool only ever ends a word, and another only ends the first
half of a compound (so a ZWNJ always follows it). Boundary labels are
therefore a deterministic function of the preceding character, which a
model with any context window >= 1 can recover nearly perfectly.
"""

import random

from urduseg import Corpus, parse_annotated
from urduseg.script import SPACE, ZWNJ

MEDIAL = "بتجسمفک"  # ب ت ج س م ف ک
WORD_FINAL = "دروز"  # د ر و ز
MORPH_FINAL = "ہط"  # ہ ط

# Extra non-marker characters for the corpus-format stress generator.
EXTRA = "۰۱۲۳۴۔،؟Ab7"


def _word(rng, p_compound):
    stem = "".join(rng.choice(MEDIAL) for _ in range(rng.randint(1, 3)))
    if rng.random() < p_compound:
        tail = "".join(rng.choice(MEDIAL) for _ in range(rng.randint(1, 3)))
        return stem + rng.choice(MORPH_FINAL) + ZWNJ + tail + rng.choice(WORD_FINAL)
    return stem + rng.choice(WORD_FINAL)


def make_lines(n_sentences, seed, p_compound=0.25):
    """Annotated corpus lines following the deterministic boundary rule."""
    rng = random.Random(seed)
    return [
        SPACE.join(_word(rng, p_compound) for _ in range(rng.randint(3, 8)))
        for _ in range(n_sentences)
    ]


def make_corpus(n_sentences, seed, p_compound=0.25):
    sentences = [parse_annotated(line) for line in make_lines(n_sentences, seed, p_compound)]
    return Corpus(sentences, source="synthetic(seed=%d)" % seed)


def random_wellformed_line(rng, max_units=7, max_chars=5):
    """A random normalized annotated line over a mixed alphabet.

    Well-formed by construction: nonempty content segments joined by
    single markers, nothing at the edges.
    """
    pool = MEDIAL + WORD_FINAL + MORPH_FINAL + EXTRA
    units = [
        "".join(rng.choice(pool) for _ in range(rng.randint(1, max_chars)))
        for _ in range(rng.randint(1, max_units))
    ]
    line = units[0]
    for unit in units[1:]:
        line += rng.choice((SPACE, ZWNJ)) + unit
    return line
