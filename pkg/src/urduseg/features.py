"""Feature templates and the feature-string index.

A template set turns (sentence, position) into a set of human-readable
feature strings; the index maps those strings onto dense ids for the
weight matrix. The string syntax below is part of the model file format
(models record the template settings and the full string table), so it
must stay stable:

    U[o]=c          character at offset o from the position (unigram)
    B[o,o+1]=a|b    adjacent character pair (bigram)
    T[o,o+2]=a|b|c  character triple (only with use_trigrams)
    digit=true      current character is a digit
    joiner=false    current character is a dual-joining letter
    class=Digit     coarse character class of the current character
    dir=RightToLeft display direction of the current character

Offsets outside the sentence read the sentinels below; multi-character
slot values are joined with "|", which no template value can contain
(the markers and "|" never survive parsing into a character sequence).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace

from . import script
from .errors import EmptyCorpus, PositionOutOfRange

BOS = "<s>"  # read by offsets before the first character
EOS = "</s>"  # read by offsets past the last character

_WINDOWS = (0, 1, 2, 3)


@dataclass(frozen=True)
class FeatureTemplateSet:
    """Which templates are active.

    ``window`` is the half-width k: unigrams cover offsets -k..k and
    bigrams every adjacent pair inside that span. The four boolean
    families describe the current character only.
    """

    window: int = 3
    use_is_digit: bool = True
    use_is_joiner: bool = True
    use_unicode_class: bool = True
    use_direction: bool = True
    use_trigrams: bool = False

    def __post_init__(self):
        if self.window not in _WINDOWS:
            raise ValueError("window must be one of %s" % (_WINDOWS,))

    def to_dict(self):
        return {
            "window": self.window,
            "use_is_digit": self.use_is_digit,
            "use_is_joiner": self.use_is_joiner,
            "use_unicode_class": self.use_unicode_class,
            "use_direction": self.use_direction,
            "use_trigrams": self.use_trigrams,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(**d)

    def describe(self):
        """Short one-line summary, e.g. "window=3 +digit +joiner"."""
        bits = ["window=%d" % self.window]
        for name, flag in (
            ("digit", self.use_is_digit),
            ("joiner", self.use_is_joiner),
            ("class", self.use_unicode_class),
            ("dir", self.use_direction),
            ("trigrams", self.use_trigrams),
        ):
            if flag:
                bits.append("+" + name)
        return " ".join(bits)


def cumulative_ladder():
    """The eight cumulative template settings used by the ablation harness.

    Four window rungs (k = 0..3) with every boolean family off, then the
    k=3 setting gains one boolean family per rung: digit, joiner, Unicode
    class, direction.
    """
    bare = FeatureTemplateSet(
        window=0,
        use_is_digit=False,
        use_is_joiner=False,
        use_unicode_class=False,
        use_direction=False,
    )
    rungs = [replace(bare, window=k) for k in _WINDOWS]
    rungs.append(replace(rungs[-1], use_is_digit=True))
    rungs.append(replace(rungs[-1], use_is_joiner=True))
    rungs.append(replace(rungs[-1], use_unicode_class=True))
    rungs.append(replace(rungs[-1], use_direction=True))
    return rungs


CUMULATIVE_RUNG_NAMES = (
    "current character",
    "+1 character window",
    "+2 character window",
    "+3 character window",
    "+is-digit",
    "+is-joiner",
    "+unicode class",
    "+direction",
)


def extract(chars, i, templates):
    """Feature strings for position ``i`` of ``chars``.

    With all boolean families off this yields exactly (2k+1) unigrams and
    2k bigrams; the offset tags keep strings from distinct templates
    distinct, so the set size equals the template count.
    """
    n = len(chars)
    if not 0 <= i < n:
        raise PositionOutOfRange("position %d outside sequence of length %d" % (i, n))

    def at(offset):
        j = i + offset
        if j < 0:
            return BOS
        if j >= n:
            return EOS
        return chars[j]

    k = templates.window
    feats = set()
    for o in range(-k, k + 1):
        feats.add("U[%d]=%s" % (o, at(o)))
    for o in range(-k, k):
        feats.add("B[%d,%d]=%s|%s" % (o, o + 1, at(o), at(o + 1)))
    if templates.use_trigrams:
        for o in range(-k, k - 1):
            feats.add("T[%d,%d]=%s|%s|%s" % (o, o + 2, at(o), at(o + 1), at(o + 2)))

    cur = chars[i]
    if templates.use_is_digit:
        feats.add("digit=%s" % str(script.is_digit(cur)).lower())
    if templates.use_is_joiner:
        feats.add("joiner=%s" % str(script.is_joiner(cur)).lower())
    if templates.use_unicode_class:
        feats.add("class=%s" % script.classify(cur).value)
    if templates.use_direction:
        feats.add("dir=%s" % script.direction(cur).value)
    return feats


class FeatureIndex:
    """Injective map from feature strings to dense ids 0..n-1.

    Ids are assigned by sorting the retained strings lexicographically,
    so index construction is deterministic. Once frozen, lookups of
    unknown strings return None (the feature is silently absent) and no
    new ids can be allocated.
    """

    __slots__ = ("_ids", "_strings", "_frozen")

    def __init__(self):
        self._ids = {}
        self._strings = []
        self._frozen = False

    @classmethod
    def from_strings(cls, strings, frozen=True):
        index = cls()
        for s in strings:
            index.intern(s)
        if frozen:
            index.freeze()
        return index

    @property
    def frozen(self):
        return self._frozen

    def freeze(self):
        self._frozen = True

    def intern(self, feature):
        """Id for ``feature``, allocating a fresh one while unfrozen."""
        fid = self._ids.get(feature)
        if fid is None:
            if self._frozen:
                raise RuntimeError("cannot add %r to a frozen index" % feature)
            fid = len(self._strings)
            self._ids[feature] = fid
            self._strings.append(feature)
        return fid

    def get(self, feature):
        """Id for ``feature`` or None when absent."""
        return self._ids.get(feature)

    def strings(self):
        """The feature strings in id order (a copy)."""
        return list(self._strings)

    def __len__(self):
        return len(self._strings)

    def __contains__(self, feature):
        return feature in self._ids


def build_index(corpus, templates, min_count=1):
    """Scan a corpus, count feature occurrences, and build a frozen index.

    Features occurring fewer than ``min_count`` times are dropped. Ids
    follow lexicographic string order, so the result depends only on the
    corpus content and settings.
    """
    if min_count < 1:
        raise ValueError("min_count must be at least 1")
    if not corpus.sentences:
        raise EmptyCorpus("cannot build a feature index from an empty corpus")
    counts = Counter()
    for seq in corpus.sentences:
        for i in range(len(seq.chars)):
            counts.update(extract(seq.chars, i, templates))
    kept = sorted(f for f, c in counts.items() if c >= min_count)
    return FeatureIndex.from_strings(kept)


def vectorize(chars, i, templates, index):
    """Sorted ids of the features active at position ``i``.

    Requires a frozen index; strings the index does not know are dropped,
    which is how unseen test-time characters degrade gracefully.
    """
    if not index.frozen:
        raise ValueError("vectorize needs a frozen feature index")
    ids = (index.get(f) for f in extract(chars, i, templates))
    return sorted(fid for fid in ids if fid is not None)
