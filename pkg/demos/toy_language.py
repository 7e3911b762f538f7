"""A toy Urdu-script language with deterministic boundary cues.

The demos need annotated text, and hand-writing thousands of lines is out of
the question, so we invent a miniature orthography built from real Perso-Arabic
letters.  The trick: the identity of a letter decides what may follow it.

- letters in MEDIAL never end a unit,
- letters in WORD_FINAL always end a word (a space follows),
- letters in MORPH_FINAL always end a morph inside a compound (ZWNJ follows).

A tagger with even one character of left context can learn these rules
perfectly, which makes the training demos quick and their output legible:
when the model is right, it is visibly right.
"""

import random

from urduseg import SPACE, ZWNJ

MEDIAL = "بتجسمفک"
WORD_FINAL = "دروز"
MORPH_FINAL = "ہط"


def make_word(rng, p_compound=0.25):
    """One word: a few medial letters, a closing letter, maybe a ZWNJ joint."""
    parts = []
    n_morphs = 2 if rng.random() < p_compound else 1
    for k in range(n_morphs):
        body = "".join(rng.choice(MEDIAL) for _ in range(rng.randint(1, 4)))
        last = k == n_morphs - 1
        closer = rng.choice(WORD_FINAL if last else MORPH_FINAL)
        parts.append(body + closer)
    return ZWNJ.join(parts)


def make_lines(n, seed, p_compound=0.25):
    """Annotated lines: spaces mark word breaks, ZWNJ marks morph breaks."""
    rng = random.Random(seed)
    return [
        SPACE.join(make_word(rng, p_compound) for _ in range(rng.randint(3, 8)))
        for _ in range(n)
    ]
