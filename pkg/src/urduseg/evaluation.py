"""Scoring predicted boundary labels against gold annotations.

Precision/recall/F1 are computed per class from a 3x3 confusion matrix.
The headline macro- and micro-F1 aggregate over the two boundary classes
only (B_w, B_s): the I class dominates every corpus and would drown the
numbers that actually matter for segmentation quality.
"""

from __future__ import annotations

import json
import warnings
from collections import namedtuple
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal

import numpy as np

from .corpus import LABEL_TAGS, Label, label_tag
from .crf import viterbi
from .errors import AlignmentMismatch
from .serialization import model_digest
from .training import TrainConfig, train

ClassMetrics = namedtuple("ClassMetrics", ["precision", "recall", "f1"])
AblationRow = namedtuple("AblationRow", ["templates", "f1_word", "f1_subword"])

_BOUNDARY_LABELS = (Label.B_W, Label.B_S)


@dataclass
class ConfusionMatrix:
    """3x3 label confusion counts; rows are gold, columns predicted."""

    counts: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.shape != (3, 3):
            raise ValueError("confusion matrix must be 3x3")
        self.counts = counts

    @classmethod
    def from_sequences(cls, gold, predicted):
        """Accumulate counts over parallel per-sentence label sequences."""
        gold = list(gold)
        predicted = list(predicted)
        if len(gold) != len(predicted):
            raise AlignmentMismatch(
                "gold has %d sentences, predictions %d" % (len(gold), len(predicted))
            )
        counts = np.zeros((3, 3), dtype=np.int64)
        for si, (g, p) in enumerate(zip(gold, predicted)):
            if len(g) != len(p):
                raise AlignmentMismatch(
                    "sentence %d: gold has %d labels, prediction %d"
                    % (si, len(g), len(p))
                )
            for a, b in zip(g, p):
                counts[int(a), int(b)] += 1
        return cls(counts)

    def total(self):
        return int(self.counts.sum())


def prf(matrix, label):
    """Precision, recall, F1 of one label; zero denominators give zeros."""
    counts = matrix.counts
    y = int(label)
    tp = float(counts[y, y])
    predicted = float(counts[:, y].sum())
    gold = float(counts[y, :].sum())
    precision = tp / predicted if predicted > 0 else 0.0
    recall = tp / gold if gold > 0 else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return ClassMetrics(precision, recall, f1)


def macro_micro(matrix):
    """(macro-F1, micro-F1) over the boundary labels B_w and B_s.

    Macro averages the two class F1 scores. Micro pools their true/false
    positives and negatives, so it is blind to changes in the I-I cell.
    A boundary class absent from both gold and predictions contributes a
    zero F1 and triggers a warning, since the average is then hard to
    interpret.
    """
    counts = matrix.counts
    f1s = []
    tp = fp = fn = 0.0
    for label in _BOUNDARY_LABELS:
        y = int(label)
        if counts[y, :].sum() == 0 and counts[:, y].sum() == 0:
            warnings.warn(
                "label %s absent from gold and predictions; its F1 counts as 0"
                % label_tag(label),
                stacklevel=2,
            )
        f1s.append(prf(matrix, label).f1)
        tp += counts[y, y]
        fp += counts[:, y].sum() - counts[y, y]
        fn += counts[y, :].sum() - counts[y, y]
    macro = sum(f1s) / len(f1s)
    denom = 2 * tp + fp + fn
    micro = 2 * tp / denom if denom > 0 else 0.0
    return macro, micro


def round_half_up(x, digits=2):
    """Decimal rounding with ties away from zero (0.975 -> 0.98)."""
    q = Decimal(1).scaleb(-digits)
    return float(Decimal(repr(float(x))).quantize(q, rounding=ROUND_HALF_UP))


@dataclass
class EvalReport:
    """Everything a segmentation evaluation produces."""

    confusion: ConfusionMatrix
    per_class: dict
    macro_f1: float
    micro_f1: float
    provenance: dict = field(default_factory=dict)
    templates: dict | None = None
    model_sha256: str | None = None

    def to_json(self):
        payload = {
            "per_class": {
                tag: {"precision": m.precision, "recall": m.recall, "f1": m.f1}
                for tag, m in self.per_class.items()
            },
            "macro_f1": self.macro_f1,
            "micro_f1": self.micro_f1,
            "confusion": self.confusion.counts.tolist(),
            "provenance": self.provenance,
            "templates": self.templates,
            "model_sha256": self.model_sha256,
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    def to_text(self):
        lines = ["per-class metrics"]
        lines.append("  %-5s %9s %9s %9s" % ("class", "precision", "recall", "f1"))
        for tag, m in self.per_class.items():
            lines.append(
                "  %-5s %9.4f %9.4f %9.4f" % (tag, m.precision, m.recall, m.f1)
            )
        lines.append("macro-F1 over boundary labels: %.4f" % self.macro_f1)
        lines.append("micro-F1 over boundary labels: %.4f" % self.micro_f1)
        lines.append("confusion counts (row = gold, column = predicted)")
        lines.append("  %-5s %8s %8s %8s" % ("", *LABEL_TAGS))
        for g, tag in enumerate(LABEL_TAGS):
            lines.append(
                "  %-5s %8d %8d %8d" % (tag, *self.confusion.counts[g])
            )
        for key, value in self.provenance.items():
            lines.append("%s: %s" % (key, value))
        if self.model_sha256:
            lines.append("model sha256: %s" % self.model_sha256)
        return "\n".join(lines)


def report_from_matrix(matrix, provenance=None, templates=None, model_sha256=None):
    """Assemble an EvalReport from a ready confusion matrix."""
    per_class = {label_tag(lab): prf(matrix, lab) for lab in Label}
    macro, micro = macro_micro(matrix)
    return EvalReport(
        confusion=matrix,
        per_class=per_class,
        macro_f1=macro,
        micro_f1=micro,
        provenance=provenance or {},
        templates=templates,
        model_sha256=model_sha256,
    )


def evaluate(model, corpus):
    """Decode every sentence of ``corpus`` and score against its labels."""
    gold = []
    predicted = []
    for seq in corpus.sentences:
        gold.append(seq.labels)
        predicted.append(viterbi(model, seq.chars))
    matrix = ConfusionMatrix.from_sequences(gold, predicted)
    provenance = {
        "corpus": corpus.source or "<in-memory>",
        "diacritics_stripped": corpus.diacritics_stripped,
        "sentences": len(corpus.sentences),
        "characters": matrix.total(),
    }
    return report_from_matrix(
        matrix,
        provenance=provenance,
        templates=model.templates.to_dict(),
        model_sha256=model_digest(model),
    )


def ablate(train_corpus, test_corpus, ladder, config=None):
    """Train once per template setting and score each on the test corpus.

    Returns one AblationRow (templates, B_w F1, B_s F1) per rung, in
    ladder order. Each rung trains from scratch with the same config, so
    rows differ only in their feature templates.
    """
    if config is None:
        config = TrainConfig()
    rows = []
    for templates in ladder:
        model = train(train_corpus, templates, config)
        report = evaluate(model, test_corpus)
        rows.append(
            AblationRow(
                templates=templates,
                f1_word=report.per_class["B_w"].f1,
                f1_subword=report.per_class["B_s"].f1,
            )
        )
    return rows
