"""Character-level groundwork: classification, direction, normalization.

Everything downstream (features, corpus handling, the segmentation pipeline)
leans on these few functions, so this demo walks through what they actually
say about real characters.
"""

from urduseg import (
    CharClass,
    classify,
    direction,
    is_diacritic,
    is_digit,
    is_joiner,
    normalize,
    strip_diacritics,
)

SAMPLES = [
    ("ب", "beh, connects both ways"),
    ("د", "dal, never connects leftwards"),
    ("ء", "hamza, floats on its own"),
    ("ِ", "zer, a diacritic"),
    ("۴", "extended Arabic-Indic four"),
    ("7", "an ASCII digit"),
    ("۔", "full stop"),
    ("‌", "zero-width non-joiner"),
]


def show_classification():
    print("Character classification")
    print("-" * 64)
    for ch, gloss in SAMPLES:
        label = classify(ch)
        name = "ZWNJ" if ch == "‌" else ch
        flags = []
        if is_joiner(ch):
            flags.append("joiner")
        if is_digit(ch):
            flags.append("digit")
        if is_diacritic(ch):
            flags.append("diacritic")
        print(
            "  %-4s %-28s -> %-16s dir=%-12s %s"
            % (name, gloss, label.value, direction(ch).value, " ".join(flags))
        )
    print()


def show_joining_contrast():
    print("Why joining matters for segmentation")
    print("-" * 64)
    print("  A ZWNJ only changes the rendered shape after a dual-joining")
    print("  letter; after a right-joining letter the glyphs were already")
    print("  detached.  Compare (the strings differ by one ZWNJ):")
    print()
    print("    with ZWNJ:    %r" % "کتاب‌خانہ")
    print("    without:      %r" % "کتابخانہ")
    print()
    assert classify("ب") is CharClass.LETTER_JOINER
    assert classify("د") is CharClass.LETTER_NONJOINER
    print("  classify('ب') = %s" % classify("ب").value)
    print("  classify('د') = %s" % classify("د").value)
    print()


def show_normalization():
    print("Normalization")
    print("-" * 64)
    decomposed = "آب"  # alef + maddah combining mark, then beh
    print("  NFC composition: %d chars -> %d chars" % (
        len(decomposed), len(normalize(decomposed))))
    messy = "  اب   جد "
    print("  whitespace: %r -> %r" % (messy, normalize(messy)))
    print("  idempotent: normalize(normalize(x)) == normalize(x):",
          normalize(normalize(messy)) == normalize(messy))
    print()
    vocalized = "کِتاب"
    print("  strip_diacritics(%r) = %r" % (vocalized, strip_diacritics(vocalized)))
    print()


if __name__ == "__main__":
    show_classification()
    show_joining_contrast()
    show_normalization()
