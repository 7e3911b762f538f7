"""Character-level knowledge of the Urdu (Perso-Arabic) script.

Everything the segmenter needs to know about individual characters lives
here: whether a letter connects to the following letter (the cursive
"joiner" distinction that makes word-final whitespace visually redundant),
digit and diacritic membership, bidirectional class, and the text cleanup
applied to every line before labelling.

The joiner / non-joiner split follows the Unicode Arabic joining-type
property (ArabicShaping data, Arabic block): dual-joining letters are
joiners, right-joining letters are non-joiners. The two letters that join
on neither side (hamza forms) are grouped with the non-joiners, since they
likewise never connect forward. The property data is transcribed below as
code-point ranges; Python's unicodedata module does not expose it.
"""

from __future__ import annotations

import unicodedata
from enum import Enum

SPACE = " "
ZWNJ = "‌"

_MARKERS = frozenset((SPACE, ZWNJ))


def _chars(*spans):
    """Build a frozenset of characters from code points and inclusive ranges."""
    out = set()
    for span in spans:
        if isinstance(span, int):
            out.add(chr(span))
        else:
            lo, hi = span
            out.update(chr(cp) for cp in range(lo, hi + 1))
    return frozenset(out)


# Dual-joining letters: connect to neighbours on both sides.
JOINERS = _chars(
    0x0620,            # kashmiri yeh
    0x0626,            # yeh with hamza above
    0x0628,            # beh
    (0x062A, 0x062E),  # teh, theh, jeem, hah, khah
    (0x0633, 0x063F),  # seen..ghain, plus the dotted farsi yeh variants
    (0x0641, 0x0647),  # feh, qaf, kaf, lam, meem, noon, heh
    (0x0649, 0x064A),  # alef maksura, yeh
    (0x066E, 0x066F),  # dotless beh, dotless qaf
    (0x0678, 0x0687),  # high hamza yeh, tteh, teheh, beeh, peh, ..., tcheheh
    (0x069A, 0x06BF),  # seen/sad/tah/ain dot variants, keheh, gaf, noons, heh doachashmee
    (0x06C1, 0x06C2),  # heh goal, heh goal with hamza above
    0x06CC,            # farsi yeh
    0x06CE,            # yeh with small v
    (0x06D0, 0x06D1),  # e, yeh with three dots below
    (0x06FA, 0x06FC),  # sheen/dad/ghain with dot below
    0x06FF,            # heh with inverted v
)

# Right-joining letters connect only to the preceding letter, so nothing
# ever attaches to their left (visual) side; hamza forms join on neither
# side and are folded in here.
NON_JOINERS = _chars(
    0x0621,            # hamza (joins on neither side)
    (0x0622, 0x0625),  # alef with madda / hamza above / hamza below, waw with hamza
    0x0627,            # alef
    0x0629,            # teh marbuta
    (0x062F, 0x0632),  # dal, thal, reh, zain
    0x0648,            # waw
    (0x0671, 0x0673),  # alef wasla, alef with wavy hamza
    0x0674,            # high hamza (joins on neither side)
    (0x0675, 0x0677),  # high hamza alef / waw, u with hamza above
    (0x0688, 0x0699),  # ddal..rreh, jeh, and the remaining dal/reh variants
    0x06C0,            # heh with yeh above
    (0x06C3, 0x06CB),  # teh marbuta goal, kirghiz oe, waw variants
    0x06CD,            # yeh with tail
    0x06CF,            # waw with dot above
    (0x06D2, 0x06D3),  # yeh barree, yeh barree with hamza above
    0x06D5,            # ae
    (0x06EE, 0x06EF),  # dal and reh with inverted v
)

# ASCII, Arabic-Indic, and Extended Arabic-Indic digits.
DIGITS = _chars((0x0030, 0x0039), (0x0660, 0x0669), (0x06F0, 0x06F9))

# The short vowels and signs commonly dropped from written Urdu: fathatan
# through sukun, plus the superscript alef. Operations that care accept a
# custom set, so this is a default rather than a fixed policy.
DEFAULT_DIACRITICS = _chars((0x064B, 0x0652), 0x0670)


class CharClass(Enum):
    """Coarse character classes used by the feature templates."""

    LETTER_JOINER = "LetterJoiner"
    LETTER_NONJOINER = "LetterNonJoiner"
    DIGIT = "Digit"
    DIACRITIC = "Diacritic"
    PUNCTUATION = "Punctuation"
    SPACE = "Space"
    ZWNJ = "Zwnj"
    OTHER = "Other"


class Direction(Enum):
    """Display direction of a character in bidirectional text."""

    RTL = "RightToLeft"
    LTR = "LeftToRight"
    NEUTRAL = "Neutral"


def classify(ch, diacritics=DEFAULT_DIACRITICS):
    """Classify a single character.

    Total over all Unicode scalars: anything unrecognized is OTHER.
    A custom ``diacritics`` set takes precedence over letter membership,
    so the classes stay mutually exclusive whatever the caller passes.
    """
    if len(ch) != 1:
        raise ValueError("classify expects a single character, got %r" % (ch,))
    if ch == SPACE:
        return CharClass.SPACE
    if ch == ZWNJ:
        return CharClass.ZWNJ
    if ch in diacritics:
        return CharClass.DIACRITIC
    if ch in JOINERS:
        return CharClass.LETTER_JOINER
    if ch in NON_JOINERS:
        return CharClass.LETTER_NONJOINER
    if ch in DIGITS:
        return CharClass.DIGIT
    if unicodedata.category(ch).startswith("P"):
        return CharClass.PUNCTUATION
    return CharClass.OTHER


def is_joiner(ch):
    """True iff ``ch`` is a dual-joining letter."""
    return ch in JOINERS


def is_digit(ch):
    """True iff ``ch`` is an ASCII, Arabic-Indic, or Extended Arabic-Indic digit."""
    return ch in DIGITS


def is_diacritic(ch, diacritics=DEFAULT_DIACRITICS):
    """True iff ``ch`` belongs to the (configurable) diacritic set."""
    return ch in diacritics


def direction(ch, diacritics=DEFAULT_DIACRITICS):
    """Display direction for ``ch``.

    Letters and diacritics are right-to-left, digits left-to-right, and
    the boundary markers plus punctuation are neutral. Characters outside
    the script fall back on their Unicode bidirectional class.
    """
    cls = classify(ch, diacritics)
    if cls in (CharClass.LETTER_JOINER, CharClass.LETTER_NONJOINER, CharClass.DIACRITIC):
        return Direction.RTL
    if cls is CharClass.DIGIT:
        return Direction.LTR
    if cls in (CharClass.SPACE, CharClass.ZWNJ, CharClass.PUNCTUATION):
        return Direction.NEUTRAL
    bidi = unicodedata.bidirectional(ch)
    if bidi in ("R", "AL"):
        return Direction.RTL
    if bidi in ("L", "EN", "AN"):
        return Direction.LTR
    return Direction.NEUTRAL


def normalize(text):
    """Canonically compose ``text`` and tidy its spaces.

    Applies NFC, collapses runs of U+0020 to a single space, and strips
    leading/trailing spaces. Other whitespace (tabs, no-break spaces) is
    left alone so that anomalies stay visible downstream. Idempotent.
    """
    text = unicodedata.normalize("NFC", text)
    return SPACE.join(part for part in text.split(SPACE) if part)


def strip_diacritics(text, diacritics=DEFAULT_DIACRITICS):
    """Drop every character of ``diacritics`` from ``text``."""
    return "".join(ch for ch in text if ch not in diacritics)
