import random
from collections import Counter

import pytest

import synthdata
from urduseg import (
    Corpus,
    CrfModel,
    EmptyAfterNormalization,
    FeatureTemplateSet,
    Label,
    LabeledSequence,
    SegmentOptions,
    build_index,
    parse_annotated,
    segment_text,
)
from urduseg.script import SPACE, ZWNJ, strip_diacritics

I, BW, BS = Label.I, Label.B_W, Label.B_S

RESPECT = SegmentOptions(respect_existing_boundaries=True)


def _zero_model():
    corpus = synthdata.make_corpus(20, seed=50)
    templates = FeatureTemplateSet(window=1)
    return CrfModel.zeros(build_index(corpus, templates), templates)


class TestZeroModel:
    """With all-zero weights the decoder prefers I everywhere, which makes
    the pipeline's clamping behaviour fully observable."""

    def test_unmarked_text_comes_back_as_one_word(self):
        model = _zero_model()
        assert segment_text("ابجد", model) == "ابجد"

    def test_input_markers_are_noise_by_default(self):
        model = _zero_model()
        assert segment_text("اب جد" + ZWNJ + "ہو", model) == "ابجدہو"

    def test_respect_mode_reproduces_the_input_exactly(self):
        model = _zero_model()
        rng = random.Random(51)
        for _ in range(60):
            line = synthdata.random_wellformed_line(rng)
            assert segment_text(line, model, RESPECT) == line

    def test_respect_mode_survives_messy_spacing(self):
        model = _zero_model()
        assert segment_text("  اب   جد ", model, RESPECT) == "اب جد"


class TestTrainedModel:
    def test_recovers_heldout_segmentations(self, synth_model, synth_split):
        _, test_corpus = synth_split
        sample = test_corpus.sentences[:150]
        exact = sum(
            segment_text(seq.chars, synth_model) == _render(seq) for seq in sample
        )
        assert exact >= 0.97 * len(sample)

    def test_idempotent(self, synth_model, synth_split):
        _, test_corpus = synth_split
        for seq in test_corpus.sentences[:50]:
            once = segment_text(seq.chars, synth_model)
            assert segment_text(once, synth_model) == once

    def test_idempotent_in_respect_mode(self, synth_model, synth_split):
        _, test_corpus = synth_split
        for seq in test_corpus.sentences[:50]:
            once = segment_text(seq.chars, synth_model, RESPECT)
            assert segment_text(once, synth_model, RESPECT) == once

    def test_respect_mode_keeps_every_input_boundary(self, synth_model):
        line = "ابہ" + ZWNJ + "تد رو"
        out = segment_text(line, synth_model, RESPECT)
        gold = parse_annotated(line)
        result = parse_annotated(out)
        assert result.chars == gold.chars
        for got, want in zip(result.labels, gold.labels):
            if want != I:
                assert got == want

    def test_conservation(self, synth_model):
        rng = random.Random(52)
        for _ in range(40):
            line = synthdata.random_wellformed_line(rng)
            out = segment_text(line, synth_model)
            kept = Counter(ch for ch in out if ch not in (SPACE, ZWNJ))
            fed = Counter(ch for ch in line if ch not in (SPACE, ZWNJ))
            assert kept == fed

    def test_output_never_opens_with_a_marker(self, synth_model):
        rng = random.Random(53)
        for _ in range(40):
            out = segment_text(synthdata.random_wellformed_line(rng), synth_model)
            assert out[0] not in (SPACE, ZWNJ)
            assert parse_annotated(out).labels[0] == BW

    def test_single_character(self, synth_model):
        assert segment_text("ب", synth_model) == "ب"


class TestDiacritics:
    def test_stripped_by_default(self, synth_model):
        out = segment_text("بِتد", synth_model)
        assert "ِ" not in out
        assert strip_diacritics(out) == out

    def test_kept_on_request(self, synth_model):
        options = SegmentOptions(strip_diacritics=False)
        out = segment_text("بِتد", synth_model, options)
        assert "ِ" in out

    def test_diacritics_only_input_is_empty(self, synth_model):
        with pytest.raises(EmptyAfterNormalization):
            segment_text("َِ", synth_model)


class TestEmptyInput:
    @pytest.mark.parametrize("text", ["", "   ", ZWNJ, SPACE + ZWNJ + SPACE])
    def test_raises(self, text, synth_model):
        with pytest.raises(EmptyAfterNormalization):
            segment_text(text, synth_model)


def _render(seq):
    from urduseg import render_segmented

    return render_segmented(seq)


def test_normalization_happens_before_decoding(synth_model):
    noisy = "  بتد   سرو "
    assert segment_text(noisy, synth_model) == segment_text("بتد سرو", synth_model)
