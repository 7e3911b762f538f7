import struct

import numpy as np
import pytest

import synthdata
from urduseg import (
    CorruptModel,
    CrfModel,
    FeatureTemplateSet,
    IoFailure,
    VersionMismatch,
    build_index,
    describe_model,
    load_model,
    model_digest,
    save_model,
    serialize_model,
    viterbi,
)
from urduseg.serialization import FORMAT_VERSION, MAGIC, deserialize_model


def _random_model(seed=0, window=1):
    corpus = synthdata.make_corpus(15, seed=seed)
    templates = FeatureTemplateSet(window=window, use_trigrams=False)
    index = build_index(corpus, templates)
    model = CrfModel.zeros(index, templates)
    rng = np.random.default_rng(seed + 100)
    model.unary = rng.normal(0, 1, model.unary.shape)
    model.transitions = rng.normal(0, 1, (3, 3))
    model.start = rng.normal(0, 1, 3)
    return model


class TestRoundtrip:
    def test_exact_weights_and_metadata(self, tmp_path):
        model = _random_model(seed=1)
        path = tmp_path / "model.bin"
        save_model(model, path)
        loaded = load_model(path)
        assert np.array_equal(loaded.unary, model.unary)
        assert np.array_equal(loaded.transitions, model.transitions)
        assert np.array_equal(loaded.start, model.start)
        assert loaded.templates == model.templates
        assert loaded.feature_index.strings() == model.feature_index.strings()
        assert loaded.feature_index.frozen

    def test_decoding_is_preserved(self, tmp_path):
        model = _random_model(seed=2)
        path = tmp_path / "model.bin"
        save_model(model, path)
        loaded = load_model(path)
        for seq in synthdata.make_corpus(10, seed=3).sentences:
            assert viterbi(loaded, seq.chars) == viterbi(model, seq.chars)

    def test_serialize_deserialize_without_files(self):
        model = _random_model(seed=4)
        again = deserialize_model(serialize_model(model))
        assert np.array_equal(again.unary, model.unary)

    def test_bytes_are_stable(self):
        model = _random_model(seed=5)
        assert serialize_model(model) == serialize_model(model)


class TestDamage:
    def test_flipped_byte_in_the_middle(self):
        data = bytearray(serialize_model(_random_model()))
        data[len(data) // 2] ^= 0xFF
        with pytest.raises(CorruptModel):
            deserialize_model(bytes(data))

    def test_truncated_file(self):
        data = serialize_model(_random_model())
        with pytest.raises(CorruptModel):
            deserialize_model(data[: len(data) - 7])

    def test_version_bump_wins_over_checksum(self):
        """A future-version file must say VersionMismatch, not CorruptModel,
        even though the bump also invalidates the checksum."""
        data = bytearray(serialize_model(_random_model()))
        struct.pack_into("<I", data, len(MAGIC), FORMAT_VERSION + 1)
        with pytest.raises(VersionMismatch):
            deserialize_model(bytes(data))

    def test_bad_magic(self):
        data = bytearray(serialize_model(_random_model()))
        data[0] ^= 0xFF
        with pytest.raises(CorruptModel):
            deserialize_model(bytes(data))

    def test_empty_and_tiny_blobs(self):
        with pytest.raises(CorruptModel):
            deserialize_model(b"")
        with pytest.raises(CorruptModel):
            deserialize_model(MAGIC)

    def test_missing_file(self, tmp_path):
        with pytest.raises(IoFailure):
            load_model(tmp_path / "nope.bin")

    def test_refuses_non_finite_weights(self, tmp_path):
        model = _random_model()
        model.unary[0, 0] = np.inf
        with pytest.raises(ValueError):
            save_model(model, tmp_path / "model.bin")


class TestDigest:
    def test_stable_for_equal_models(self):
        assert model_digest(_random_model(seed=6)) == model_digest(_random_model(seed=6))

    def test_sensitive_to_weights(self):
        a = _random_model(seed=7)
        b = _random_model(seed=7)
        b.unary[0, 0] += 1e-9
        assert model_digest(a) != model_digest(b)

    def test_matches_the_stored_checksum(self):
        model = _random_model(seed=8)
        data = serialize_model(model)
        assert data[-32:].hex() == model_digest(model)


def test_describe_mentions_the_essentials():
    model = _random_model(seed=9)
    text = describe_model(model)
    assert "format version: %d" % FORMAT_VERSION in text
    assert "window=1" in text
    assert "I B_w B_s" in text
    assert model_digest(model) in text
    # the strongest feature should be listed by its string
    strongest = int(np.abs(model.unary).max(axis=1).argmax())
    assert model.feature_index.strings()[strongest] in text
