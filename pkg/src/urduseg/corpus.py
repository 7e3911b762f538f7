"""Annotated corpus handling.

The corpus format is one sentence per line, UTF-8, LF line endings. A
space marks a word boundary and a zero-width non-joiner (U+200C) marks a
sub-word boundary; every other character is content. Parsing turns each
line into a marker-free character string plus one label per character:

    I    inside a unit (no boundary before this character)
    B_w  first character of a word
    B_s  first character of a sub-word unit

The first character of a sentence always opens a word, so position 0 is
labelled B_w and markers may not sit at line edges or touch each other.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from enum import IntEnum
from pathlib import Path

import numpy as np

from . import script
from .errors import (
    AdjacentMarkers,
    CorpusParseError,
    EmptyInput,
    EmptySentence,
    IoFailure,
    LengthMismatch,
)


class Label(IntEnum):
    """Per-character boundary label. The order (I, B_w, B_s) is fixed;
    it is the tie-break order in decoding and the index order in every
    weight matrix, and it is serialized with trained models."""

    I = 0
    B_W = 1
    B_S = 2


LABEL_TAGS = ("I", "B_w", "B_s")
TAG_TO_LABEL = {tag: Label(i) for i, tag in enumerate(LABEL_TAGS)}


def label_tag(label):
    """Human-readable tag for a label value."""
    return LABEL_TAGS[label]


@dataclass(frozen=True)
class LabeledSequence:
    """A sentence as parallel characters and labels.

    ``chars`` is marker-free; ``labels`` has one entry per character and
    starts with B_w. Violations raise ValueError at construction.
    """

    chars: str
    labels: tuple

    def __post_init__(self):
        if not isinstance(self.labels, tuple):
            object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.chars) == 0:
            raise ValueError("a labelled sentence needs at least one character")
        if len(self.chars) != len(self.labels):
            raise ValueError(
                "chars and labels differ in length: %d vs %d"
                % (len(self.chars), len(self.labels))
            )
        if self.labels[0] != Label.B_W:
            raise ValueError("a sentence must open a word (label[0] must be B_w)")
        if any(ch == script.SPACE or ch == script.ZWNJ for ch in self.chars):
            raise ValueError("boundary markers may not appear among the characters")

    def __len__(self):
        return len(self.chars)


def parse_annotated(line, strip_diacritics=False):
    """Parse one annotated line into a LabeledSequence.

    The line is expected to be normalized already (load_corpus takes care
    of that). With ``strip_diacritics`` the configurable diacritic set is
    removed before labelling, which shortens the character sequence.

    Raises EmptySentence when nothing but markers remains, and
    AdjacentMarkers when two markers touch or a marker sits at a line
    edge. A line that is both (markers only) reports EmptySentence.
    """
    if strip_diacritics:
        line = script.strip_diacritics(line)
    if all(ch in script._MARKERS for ch in line):
        raise EmptySentence("no characters besides boundary markers")

    chars = []
    labels = []
    pending = Label.B_W  # the sentence opens a word
    for pos, ch in enumerate(line):
        if ch == script.SPACE or ch == script.ZWNJ:
            if pending is not None:
                raise AdjacentMarkers(
                    "boundary marker at position %d touches another marker "
                    "or the line edge" % pos,
                    position=pos,
                )
            pending = Label.B_W if ch == script.SPACE else Label.B_S
        else:
            labels.append(Label.I if pending is None else pending)
            chars.append(ch)
            pending = None
    if pending is not None:
        raise AdjacentMarkers(
            "boundary marker at the end of the line",
            position=len(line) - 1,
        )
    return LabeledSequence("".join(chars), tuple(labels))


def render_segmented(seq):
    """Inverse of parse_annotated: reinsert markers before B_w/B_s characters."""
    parts = []
    for i in range(len(seq.chars)):
        label = seq.labels[i]
        if label == Label.B_W and i > 0:
            parts.append(script.SPACE)
        elif label == Label.B_S:
            parts.append(script.ZWNJ)
        parts.append(seq.chars[i])
    return "".join(parts)


@dataclass
class CorpusIssue:
    """One recoverable problem found while loading a corpus."""

    line_no: int
    position: int  # character offset into the normalized line, -1 if n/a
    kind: str
    message: str

    def __str__(self):
        return "line %d, offset %d: %s (%s)" % (
            self.line_no,
            self.position,
            self.message,
            self.kind,
        )


@dataclass
class Corpus:
    """A list of labelled sentences plus loading provenance."""

    sentences: list
    source: str | None = None
    diacritics_stripped: bool = False
    issues: list = field(default_factory=list)

    def __len__(self):
        return len(self.sentences)

    def labels(self):
        """Label tuples of every sentence, in order."""
        return [seq.labels for seq in self.sentences]

    def n_tokens(self):
        """Number of space-delimited units (B_w labels) in the corpus."""
        return sum(1 for seq in self.sentences for lab in seq.labels if lab == Label.B_W)


def _collapse_marker_runs(line):
    """Keep the first marker of each run and drop markers at line edges."""
    out = []
    prev_marker = True  # acts as if a virtual marker precedes the line
    for ch in line:
        if ch in script._MARKERS:
            if prev_marker:
                continue
            prev_marker = True
        else:
            prev_marker = False
        out.append(ch)
    while out and out[-1] in script._MARKERS:
        out.pop()
    return "".join(out)


def load_corpus(path, strip_diacritics=True, strict=False):
    """Load an annotated corpus file.

    Every line is normalized (NFC, space cleanup) and parsed. Blank lines
    are skipped. In the default lenient mode, lines with adjacent markers
    are repaired by dropping the extra markers and the repair is recorded
    as an issue; lines that are empty after cleanup are skipped with an
    issue. With ``strict=True`` the first problem raises, with the line
    number attached to the exception.
    """
    try:
        data = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure("cannot read corpus file %s: %s" % (path, exc)) from exc

    sentences = []
    issues = []
    for line_no, raw in enumerate(data.split("\n"), start=1):
        raw = raw.removesuffix("\r")  # tolerate CRLF files
        if raw == "":
            continue
        line = script.normalize(raw)
        try:
            sentences.append(parse_annotated(line, strip_diacritics=strip_diacritics))
            continue
        except CorpusParseError as err:
            if strict:
                err.line_no = line_no
                raise
            kind = type(err).__name__
            position = -1 if err.position is None else err.position
            issues.append(CorpusIssue(line_no, position, kind, str(err)))
            if not isinstance(err, AdjacentMarkers):
                continue  # nothing to salvage from an empty line
        repaired = _collapse_marker_runs(line)
        try:
            sentences.append(parse_annotated(repaired, strip_diacritics=strip_diacritics))
        except CorpusParseError as err:
            issues.append(
                CorpusIssue(line_no, -1, type(err).__name__, "after repair: %s" % err)
            )
    return Corpus(
        sentences,
        source=str(path),
        diacritics_stripped=strip_diacritics,
        issues=issues,
    )


def split_corpus(corpus, train_fraction, seed):
    """Split a corpus into (train, test) by sentence.

    The sentence order is shuffled deterministically by ``seed`` and the
    first floor(n * train_fraction) sentences (clamped so both sides are
    nonempty) become the training side. The two sides partition the input.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValueError("train_fraction must lie strictly between 0 and 1")
    n = len(corpus.sentences)
    if n < 2:
        raise ValueError("need at least two sentences to split")
    order = np.random.default_rng(seed).permutation(n)
    # Exact ratios (e.g. fraction = k/n) can land one ulp below the integer
    # they name; the epsilon keeps floor() from undershooting in that case.
    n_train = int(math.floor(n * train_fraction + 1e-9))
    n_train = max(1, min(n - 1, n_train))
    train = [corpus.sentences[i] for i in order[:n_train]]
    test = [corpus.sentences[i] for i in order[n_train:]]
    make = lambda part: Corpus(
        part, source=corpus.source, diacritics_stripped=corpus.diacritics_stripped
    )
    return make(train), make(test)


def cohen_kappa(labels_a, labels_b):
    """Cohen's kappa between two parallel label sequences.

    Chance agreement is computed from the two annotators' marginal label
    distributions. When chance agreement is 1 (both annotators constant
    and identical) the observed agreement is also 1 and kappa is defined
    as 1. Works for any hashable label type.
    """
    a = list(labels_a)
    b = list(labels_b)
    if len(a) != len(b):
        raise LengthMismatch(
            "annotations differ in length: %d vs %d" % (len(a), len(b))
        )
    if not a:
        raise EmptyInput("kappa needs at least one labelled item")
    n = len(a)
    p_o = sum(1 for x, y in zip(a, b) if x == y) / n
    counts_a = Counter(a)
    counts_b = Counter(b)
    p_e = sum(counts_a[k] * counts_b.get(k, 0) for k in counts_a) / (n * n)
    if p_e == 1.0:
        return 1.0
    return (p_o - p_e) / (1.0 - p_e)
