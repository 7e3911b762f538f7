"""The annotation format, its invariants, and annotator agreement.

An annotated line is ordinary segmented text: spaces separate words, ZWNJ
(U+200C) separates morphs inside a compound.  Parsing turns each line into
per-character labels; rendering inverts it exactly.
"""

import tempfile

from urduseg import (
    SPACE,
    ZWNJ,
    CorpusParseError,
    cohen_kappa,
    label_tag,
    load_corpus,
    parse_annotated,
    render_segmented,
)


def show_parse():
    line = "براہ‌راست اردو"
    seq = parse_annotated(line)
    print("Parsing one annotated line")
    print("-" * 64)
    print("  input: %r" % line)
    print("  char  label")
    for ch, lab in zip(seq.chars, seq.labels):
        print("    %s    %s" % (ch, label_tag(lab)))
    assert render_segmented(seq) == line
    print("  render_segmented(parse_annotated(line)) == line: True")
    print()


def show_loading():
    lines = [
        "بتد جسر",
        "بت‌‌جد فرو",  # doubled ZWNJ: a typo the loader repairs
        "",
        "مبز کتر",
    ]
    with tempfile.NamedTemporaryFile("w", suffix=".txt", delete=False) as f:
        f.write("\n".join(lines))
        path = f.name
    corpus = load_corpus(path)
    print("Loading a file leniently")
    print("-" * 64)
    print("  %d sentences, %d issues repaired" % (len(corpus.sentences), len(corpus.issues)))
    for issue in corpus.issues:
        print("    line %d: %s" % (issue.line_no, issue.message))
    try:
        load_corpus(path, strict=True)
    except CorpusParseError as exc:
        print("  strict mode instead raises (line %d): %s" % (exc.line_no, exc))
    print()


def show_agreement():
    # Two annotators labelling the same 12 characters.  They agree except
    # on whether one compound joint is a morph break or plain word-internal.
    text = "بتجد" + SPACE + "سمہ" + ZWNJ + "فکر"
    first = parse_annotated(text).labels
    # Annotator B missed the compound joint; the characters are identical,
    # so the two label sequences align position by position.
    second = parse_annotated(text.replace(ZWNJ, "")).labels
    kappa = cohen_kappa(first, second)
    print("Inter-annotator agreement")
    print("-" * 64)
    print("  annotator A: %s" % " ".join(label_tag(l) for l in first))
    print("  annotator B: %s" % " ".join(label_tag(l) for l in second))
    print("  Cohen's kappa = %.4f" % kappa)
    print()
    print("  Perfect agreement for comparison: kappa = %.4f"
          % cohen_kappa(first, first))


if __name__ == "__main__":
    show_parse()
    show_loading()
    show_agreement()
