"""Score a model on held-out data and walk the cumulative feature ladder.

The ablation retrains the tagger once per rung, adding feature families in a
fixed order, so the table reads as "what did each addition buy".  On the toy
language the story is compressed but recognizable: context width does the
heavy lifting, and the boolean families add nothing the letters do not
already say.
"""

from toy_language import make_lines

from urduseg import (
    Corpus,
    TrainConfig,
    ablate,
    evaluate,
    parse_annotated,
    split_corpus,
    train,
)
from urduseg.features import CUMULATIVE_RUNG_NAMES, cumulative_ladder


def main():
    corpus = Corpus([parse_annotated(line) for line in make_lines(500, seed=21)])
    train_corpus, test_corpus = split_corpus(corpus, 0.8, seed=22)
    print("Corpus: %d train / %d test sentences"
          % (len(train_corpus.sentences), len(test_corpus.sentences)))
    print()

    config = TrainConfig(max_iterations=100)
    ladder = cumulative_ladder()
    model = train(train_corpus, ladder[-1], config)
    report = evaluate(model, test_corpus)
    print("Held-out report (full feature set)")
    print("-" * 64)
    print(report.to_text())
    print()

    print("Cumulative ablation")
    print("-" * 64)
    print("  %-20s %10s %10s" % ("rung", "B_w F1", "B_s F1"))
    rows = ablate(train_corpus, test_corpus, ladder, config)
    for name, row in zip(CUMULATIVE_RUNG_NAMES, rows):
        print("  %-20s %10.4f %10.4f" % (name, row.f1_word, row.f1_subword))


if __name__ == "__main__":
    main()
