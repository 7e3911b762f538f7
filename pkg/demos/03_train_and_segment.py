"""Train a tagger on the toy language, segment raw text, save and reload.

The toy orthography (see toy_language.py) decides boundaries from the
previous letter alone, so a window of one character of context is enough
to learn it exactly.  That keeps this demo under a few seconds while still
exercising the full train -> segment -> persist loop.
"""

import random
import tempfile

from toy_language import make_lines, make_word

from urduseg import (
    Corpus,
    FeatureTemplateSet,
    SegmentOptions,
    TrainConfig,
    load_model,
    model_digest,
    parse_annotated,
    save_model,
    segment_text,
    train,
)
from urduseg.script import SPACE, ZWNJ


def build_corpus():
    lines = make_lines(400, seed=11)
    return Corpus([parse_annotated(line) for line in lines])


def main():
    corpus = build_corpus()
    print("Training on %d toy sentences (%d characters)"
          % (len(corpus.sentences), corpus.n_tokens()))
    templates = FeatureTemplateSet(
        window=1,
        use_is_digit=False,
        use_is_joiner=False,
        use_unicode_class=False,
        use_direction=False,
    )
    model = train(corpus, templates, TrainConfig(max_iterations=100))
    print("  %d features, %d weights" % (
        len(model.feature_index), model.n_weights()))
    print()

    print("Segmenting unseen raw text")
    print("-" * 64)
    rng = random.Random(99)
    for _ in range(4):
        gold = SPACE.join(make_word(rng) for _ in range(4))
        raw = gold.replace(SPACE, "").replace(ZWNJ, "")
        guess = segment_text(raw, model)
        mark = "ok " if guess == gold else "MISS"
        print("  [%s] %r" % (mark, guess))
    print()

    print("Respecting boundaries the text already has")
    print("-" * 64)
    partially = "بتد" + SPACE + "سمفرجکز"  # first break given, rest missing
    options = SegmentOptions(respect_existing_boundaries=True)
    print("  input : %r" % partially)
    print("  output: %r" % segment_text(partially, model, options))
    print()

    with tempfile.NamedTemporaryFile(suffix=".model", delete=False) as f:
        path = f.name
    save_model(model, path)
    reloaded = load_model(path)
    print("Persistence")
    print("-" * 64)
    print("  digest before: %s..." % model_digest(model)[:16])
    print("  digest after : %s..." % model_digest(reloaded)[:16])
    sample = "بتدسمفرجکز"
    assert segment_text(sample, model) == segment_text(sample, reloaded)
    print("  reloaded model segments identically: True")


if __name__ == "__main__":
    main()
