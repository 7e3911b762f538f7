"""Model persistence: a small versioned, checksummed binary container.

Layout (all integers little-endian):

    offset 0   8 bytes   magic  b"USEGCRF\\n"
    offset 8   u32       format version (currently 1)
    offset 12  u32       header length H
    offset 16  H bytes   header JSON: templates, label order, counts
    ...        u32       feature-table length T
    ...        T bytes   feature strings as a JSON array, id order
    ...        f8 x N    weights: unary (F*3), transitions (9), start (3)
    end-32     32 bytes  SHA-256 over everything before it

The header records the label order and the feature-string syntax version
so a reader can refuse files it would misinterpret. Loading verifies, in
order: magic, format version, checksum, then structure; version problems
raise VersionMismatch, everything else CorruptModel.
"""

from __future__ import annotations

import hashlib
import json
import struct
from pathlib import Path

import numpy as np

from .corpus import LABEL_TAGS
from .crf import N_LABELS, CrfModel
from .errors import CorruptModel, IoFailure, VersionMismatch
from .features import FeatureIndex, FeatureTemplateSet

MAGIC = b"USEGCRF\n"
FORMAT_VERSION = 1
FEATURE_SYNTAX = 1
_CHECKSUM_BYTES = 32


def serialize_model(model):
    """Encode a model as bytes in the container format above."""
    weights = np.concatenate(
        [model.unary.ravel(), model.transitions.ravel(), model.start]
    )
    if not np.all(np.isfinite(weights)):
        raise ValueError("refusing to serialize non-finite weights")
    header = {
        "templates": model.templates.to_dict(),
        "labels": list(LABEL_TAGS),
        "n_features": len(model.feature_index),
        "feature_syntax": FEATURE_SYNTAX,
    }
    header_blob = json.dumps(header, ensure_ascii=True, sort_keys=True).encode("ascii")
    feature_blob = json.dumps(
        model.feature_index.strings(), ensure_ascii=True
    ).encode("ascii")
    out = bytearray()
    out += MAGIC
    out += struct.pack("<I", FORMAT_VERSION)
    out += struct.pack("<I", len(header_blob))
    out += header_blob
    out += struct.pack("<I", len(feature_blob))
    out += feature_blob
    out += weights.astype("<f8").tobytes()
    out += hashlib.sha256(bytes(out)).digest()
    return bytes(out)


def deserialize_model(data):
    """Decode bytes produced by serialize_model."""
    if len(data) < len(MAGIC) + 4:
        raise CorruptModel("file too short to be a model")
    if data[: len(MAGIC)] != MAGIC:
        raise CorruptModel("bad magic bytes; not a model file")
    (version,) = struct.unpack_from("<I", data, len(MAGIC))
    if version != FORMAT_VERSION:
        raise VersionMismatch(
            "model format version %d; this build reads version %d"
            % (version, FORMAT_VERSION)
        )
    if len(data) < len(MAGIC) + 8 + _CHECKSUM_BYTES:
        raise CorruptModel("truncated model file")
    digest = hashlib.sha256(data[:-_CHECKSUM_BYTES]).digest()
    if digest != data[-_CHECKSUM_BYTES:]:
        raise CorruptModel("checksum mismatch; the file is damaged")

    try:
        pos = len(MAGIC) + 4
        (header_len,) = struct.unpack_from("<I", data, pos)
        pos += 4
        header = json.loads(data[pos : pos + header_len].decode("ascii"))
        pos += header_len
        (feat_len,) = struct.unpack_from("<I", data, pos)
        pos += 4
        feature_strings = json.loads(data[pos : pos + feat_len].decode("ascii"))
        pos += feat_len
        templates = FeatureTemplateSet.from_dict(header["templates"])
        labels = header["labels"]
        n_features = header["n_features"]
    except (KeyError, ValueError, TypeError, struct.error) as exc:
        raise CorruptModel("malformed model header: %s" % exc) from exc

    if labels != list(LABEL_TAGS):
        raise CorruptModel("unsupported label order %r" % (labels,))
    if header.get("feature_syntax") != FEATURE_SYNTAX:
        raise VersionMismatch(
            "feature-string syntax %r is not supported" % header.get("feature_syntax")
        )
    if n_features != len(feature_strings):
        raise CorruptModel("feature count disagrees with the feature table")

    expected = (n_features * N_LABELS + N_LABELS * N_LABELS + N_LABELS) * 8
    blob = data[pos : len(data) - _CHECKSUM_BYTES]
    if len(blob) != expected:
        raise CorruptModel(
            "weight block is %d bytes, expected %d" % (len(blob), expected)
        )
    weights = np.frombuffer(blob, dtype="<f8")
    n_unary = n_features * N_LABELS
    return CrfModel(
        feature_index=FeatureIndex.from_strings(feature_strings),
        templates=templates,
        unary=weights[:n_unary].reshape(n_features, N_LABELS).copy(),
        transitions=weights[n_unary : n_unary + 9].reshape(N_LABELS, N_LABELS).copy(),
        start=weights[n_unary + 9 :].copy(),
    )


def save_model(model, path):
    """Write a model file; see the module docstring for the layout."""
    data = serialize_model(model)
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise IoFailure("cannot write model file %s: %s" % (path, exc)) from exc


def load_model(path):
    """Read a model file, verifying version and checksum."""
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise IoFailure("cannot read model file %s: %s" % (path, exc)) from exc
    return deserialize_model(data)


def model_digest(model):
    """Hex SHA-256 of the serialized model (the checksum stored in its file)."""
    return hashlib.sha256(serialize_model(model)[:-_CHECKSUM_BYTES]).hexdigest()


def describe_model(model, top=15):
    """Human-readable summary used by the inspect command."""
    lines = []
    lines.append("format version: %d" % FORMAT_VERSION)
    lines.append("templates: %s" % model.templates.describe())
    lines.append("features: %d (syntax v%d)" % (len(model.feature_index), FEATURE_SYNTAX))
    lines.append("labels: %s" % " ".join(LABEL_TAGS))
    lines.append("sha256: %s" % model_digest(model))
    lines.append("")
    lines.append("start weights:")
    lines.append(
        "  " + "  ".join("%s=%+.4f" % (t, w) for t, w in zip(LABEL_TAGS, model.start))
    )
    lines.append("transition weights (row = previous label):")
    for p, tag in enumerate(LABEL_TAGS):
        row = "  ".join("%+.4f" % w for w in model.transitions[p])
        lines.append("  %-4s %s" % (tag, row))
    if len(model.feature_index):
        lines.append("strongest features (by max |weight|):")
        strength = np.abs(model.unary).max(axis=1)
        order = np.argsort(-strength, kind="stable")[:top]
        strings = model.feature_index.strings()
        for fid in order:
            row = "  ".join("%+.4f" % w for w in model.unary[fid])
            lines.append("  %-28s %s" % (strings[fid], row))
    return "\n".join(lines)
