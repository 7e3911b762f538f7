"""End-to-end segmentation of raw text.

segment_text cleans up a line, strips any boundary markers it already
contains, decodes boundary labels with a trained model, and renders the
markers back in. The first character is always clamped to B_w (a
sentence opens a word), so rendering never needs a leading marker.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import script
from .corpus import Label, LabeledSequence, render_segmented
from .crf import viterbi
from .errors import EmptyAfterNormalization


@dataclass
class SegmentOptions:
    """Knobs for segment_text.

    ``respect_existing_boundaries`` keeps every marker already present in
    the input (the model only decides the unmarked positions); otherwise
    input markers are treated as noise and discarded before decoding.
    ``strip_diacritics`` removes the default diacritic set first, which
    must match how the model's training corpus was prepared.
    """

    respect_existing_boundaries: bool = False
    strip_diacritics: bool = True


def segment_text(text, model, options=None):
    """Segment one line of raw text into space/ZWNJ-marked units."""
    if options is None:
        options = SegmentOptions()
    line = script.normalize(text)
    if options.strip_diacritics:
        line = script.strip_diacritics(line)

    chars = []
    clamp = []
    pending = None
    for ch in line:
        if ch == script.SPACE or ch == script.ZWNJ:
            if options.respect_existing_boundaries:
                # Adjacent markers collapse to the last one seen.
                pending = Label.B_W if ch == script.SPACE else Label.B_S
            continue
        chars.append(ch)
        clamp.append(pending)
        pending = None
    if not chars:
        raise EmptyAfterNormalization("no segmentable characters in %r" % text)
    clamp[0] = Label.B_W

    labels = viterbi(model, "".join(chars), clamp=clamp)
    return render_segmented(LabeledSequence("".join(chars), tuple(labels)))
