import json

import numpy as np
import pytest

import synthdata
from urduseg import (
    AlignmentMismatch,
    ConfusionMatrix,
    FeatureTemplateSet,
    Label,
    TrainConfig,
    ablate,
    evaluate,
    macro_micro,
    prf,
    report_from_matrix,
    round_half_up,
    split_corpus,
    train,
)
from urduseg.features import cumulative_ladder

I, BW, BS = Label.I, Label.B_W, Label.B_S

# A frozen reference matrix with hand-computed metrics; guards the metric
# arithmetic (and the rounding convention) end to end.
REFERENCE = ConfusionMatrix(
    np.array(
        [
            [59149, 474, 42],
            [574, 19637, 53],
            [119, 116, 965],
        ]
    )
)


class TestReferenceMatrix:
    def test_word_boundary_metrics(self):
        m = prf(REFERENCE, BW)
        assert m.precision == pytest.approx(19637 / 20227, abs=1e-12)
        assert m.recall == pytest.approx(19637 / 20264, abs=1e-12)
        assert round_half_up(m.precision) == 0.97
        assert round_half_up(m.recall) == 0.97
        assert round_half_up(m.f1) == 0.97

    def test_subword_boundary_metrics(self):
        m = prf(REFERENCE, BS)
        assert m.precision == pytest.approx(965 / 1060, abs=1e-12)
        assert m.recall == pytest.approx(965 / 1200, abs=1e-12)
        assert round_half_up(m.precision) == 0.91
        assert round_half_up(m.recall) == 0.80
        assert round_half_up(m.f1) == 0.85

    def test_aggregates(self):
        macro, micro = macro_micro(REFERENCE)
        assert macro == pytest.approx((prf(REFERENCE, BW).f1 + prf(REFERENCE, BS).f1) / 2)
        assert micro == pytest.approx(2 * 20602 / (2 * 20602 + 685 + 862), abs=1e-12)
        assert round_half_up(macro) == 0.91
        assert round_half_up(micro) == 0.96


class TestConfusion:
    def test_from_sequences(self):
        gold = [(BW, I, BS), (BW,)]
        pred = [(BW, I, BW), (I,)]
        counts = ConfusionMatrix.from_sequences(gold, pred).counts
        assert counts[int(BW), int(BW)] == 1
        assert counts[int(I), int(I)] == 1
        assert counts[int(BS), int(BW)] == 1
        assert counts[int(BW), int(I)] == 1
        assert counts.sum() == 4

    def test_sentence_count_mismatch(self):
        with pytest.raises(AlignmentMismatch):
            ConfusionMatrix.from_sequences([(BW,)], [])

    def test_length_mismatch(self):
        with pytest.raises(AlignmentMismatch):
            ConfusionMatrix.from_sequences([(BW, I)], [(BW,)])

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            ConfusionMatrix(np.zeros((2, 2)))


class TestPrf:
    def test_perfect_prediction(self):
        gold = [(BW, I, BS, I)]
        matrix = ConfusionMatrix.from_sequences(gold, gold)
        for label in (I, BW, BS):
            assert prf(matrix, label) == (1.0, 1.0, 1.0)

    def test_zero_denominators_give_zeros(self):
        matrix = ConfusionMatrix(np.diag([10, 0, 0]))
        assert prf(matrix, BW) == (0.0, 0.0, 0.0)

    def test_identities_on_random_matrices(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            matrix = ConfusionMatrix(rng.integers(0, 40, (3, 3)))
            for label in (I, BW, BS):
                m = prf(matrix, label)
                assert 0.0 <= m.precision <= 1.0
                assert 0.0 <= m.recall <= 1.0
                tp = matrix.counts[int(label), int(label)]
                assert m.precision * matrix.counts[:, int(label)].sum() == pytest.approx(tp)
                assert m.recall * matrix.counts[int(label), :].sum() == pytest.approx(tp)
                if m.precision + m.recall > 0:
                    expected = 2 * m.precision * m.recall / (m.precision + m.recall)
                    assert m.f1 == pytest.approx(expected)


class TestMacroMicro:
    def test_micro_ignores_the_inside_cell(self):
        bumped = REFERENCE.counts.copy()
        bumped[0, 0] += 12345
        assert macro_micro(ConfusionMatrix(bumped)) == macro_micro(REFERENCE)

    def test_absent_boundary_class_warns_and_counts_zero(self):
        counts = np.array([[50, 2, 0], [3, 40, 0], [0, 0, 0]])
        with pytest.warns(UserWarning, match="B_s"):
            macro, _ = macro_micro(ConfusionMatrix(counts))
        f1_word = prf(ConfusionMatrix(counts), BW).f1
        assert macro == pytest.approx(f1_word / 2)


class TestRounding:
    @pytest.mark.parametrize(
        "value,expected",
        [
            (0.975, 0.98),  # banker's rounding would give 0.97
            (0.845, 0.85),
            (0.96383, 0.96),
            (0.804, 0.80),
            (-0.005, -0.01),
            (1.0, 1.0),
        ],
    )
    def test_half_up(self, value, expected):
        assert round_half_up(value) == expected

    def test_other_precisions(self):
        assert round_half_up(0.91196, 3) == 0.912
        assert round_half_up(12.5, 0) == 13.0


class TestReport:
    def test_json_is_parseable_and_full_precision(self):
        report = report_from_matrix(REFERENCE, provenance={"corpus": "x"})
        data = json.loads(report.to_json())
        assert data["per_class"]["B_w"]["precision"] == pytest.approx(19637 / 20227)
        assert data["confusion"][0][0] == 59149
        assert data["provenance"]["corpus"] == "x"

    def test_text_layout(self):
        text = report_from_matrix(REFERENCE).to_text()
        assert "macro-F1 over boundary labels: 0.9120" in text
        assert "micro-F1 over boundary labels: 0.9638" in text
        assert "B_s" in text and "59149" in text


class TestEvaluate:
    def test_on_a_trained_model(self):
        corpus = synthdata.make_corpus(120, seed=31)
        train_c, test_c = split_corpus(corpus, 0.75, seed=1)
        model = train(train_c, FeatureTemplateSet(window=1), TrainConfig(max_iterations=100))
        report = evaluate(model, test_c)
        assert report.per_class["B_w"].f1 > 0.98
        assert report.per_class["B_s"].f1 > 0.9
        assert report.confusion.total() == sum(len(s) for s in test_c.sentences)
        assert report.model_sha256
        assert report.templates == model.templates.to_dict()
        assert report.provenance["sentences"] == len(test_c)


class TestAblate:
    def test_rows_match_standalone_training(self):
        corpus = synthdata.make_corpus(80, seed=32)
        train_c, test_c = split_corpus(corpus, 0.75, seed=2)
        ladder = [cumulative_ladder()[0], cumulative_ladder()[3]]
        config = TrainConfig(max_iterations=60)
        rows = ablate(train_c, test_c, ladder, config)
        assert len(rows) == 2
        assert rows[0].templates == ladder[0]
        # determinism makes the comparison exact, not approximate
        standalone = evaluate(train(train_c, ladder[1], config), test_c)
        assert rows[1].f1_word == standalone.per_class["B_w"].f1
        assert rows[1].f1_subword == standalone.per_class["B_s"].f1

    def test_wider_window_helps_on_the_synthetic_rule(self):
        corpus = synthdata.make_corpus(80, seed=33)
        train_c, test_c = split_corpus(corpus, 0.75, seed=3)
        rows = ablate(
            train_c,
            test_c,
            [cumulative_ladder()[0], cumulative_ladder()[1]],
            TrainConfig(max_iterations=60),
        )
        assert rows[1].f1_subword > rows[0].f1_subword
