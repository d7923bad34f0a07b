"""
Testes para o EvaluationEngine.
"""

import numpy as np
import pytest

from src.exceptions import InvalidInput, NoCorrectPredictions
from src.metrics import FUSED_SOURCE, EvaluationEngine, SourcePredictions
from src.models import TrustedConfusion

PREDICTED = np.array([0, 1, 2, 0, 1, 2, 0])
LABELS = np.array([0, 1, 2, 1, 1, 2, 2])
UNCERTAINTY = np.array([0.1, 0.2, 0.3, 0.4, 0.6, 0.7, 0.9])


class TestEvaluationEngine:
    """Testes para EvaluationEngine."""

    def test_fixed_threshold(self):
        """Limiar fixo 0.5 → HT=3, HF=1, LT=2, LF=1."""
        block = EvaluationEngine(threshold=0.5, num_classes=3).evaluate_source(
            "video", PREDICTED, LABELS, UNCERTAINTY
        )

        assert block.threshold == 0.5
        assert block.threshold_mode == "fixed"
        assert block.confusion == TrustedConfusion(ht=3, lt=2, hf=1, lf=1)
        assert block.trusted_precision == 0.75
        assert block.trusted_recall == 0.6
        assert block.trusted_accuracy == 0.75
        assert block.trusted_f1 == pytest.approx(2 / 3, abs=1e-12)
        assert block.accuracy == pytest.approx(5 / 7)
        assert block.curve is not None

    def test_auto_threshold(self):
        """Modo auto escolhe o ponto onde TP = TR."""
        block = EvaluationEngine(threshold="auto").evaluate_source(
            "video", PREDICTED, LABELS, UNCERTAINTY
        )

        assert block.threshold_mode == "auto"
        assert block.threshold == pytest.approx(0.65)
        assert block.trusted_precision == pytest.approx(0.8)
        assert block.trusted_recall == pytest.approx(0.8)

    def test_auto_matches_fixed_at_selected_threshold(self):
        """Reavaliar com o limiar escolhido reproduz as métricas."""
        auto = EvaluationEngine("auto").evaluate_source("a", PREDICTED, LABELS, UNCERTAINTY)
        fixed = EvaluationEngine(auto.threshold).evaluate_source("a", PREDICTED, LABELS, UNCERTAINTY)

        assert fixed.confusion == auto.confusion
        assert fixed.trusted_f1 == auto.trusted_f1

    def test_class_confusion(self):
        """Matriz C×C com linhas = classe verdadeira."""
        block = EvaluationEngine(0.5, num_classes=3).evaluate_source(
            "video", PREDICTED, LABELS, UNCERTAINTY
        )

        assert block.class_confusion == [[1, 0, 0], [1, 2, 0], [1, 0, 2]]

    def test_class_confusion_covers_absent_classes(self):
        """num_classes define o tamanho mesmo sem amostras de uma classe."""
        block = EvaluationEngine(0.5, num_classes=4).evaluate_source(
            "video", np.array([0, 1]), np.array([0, 1]), np.array([0.1, 0.1])
        )

        assert len(block.class_confusion) == 4
        assert block.class_confusion[3] == [0, 0, 0, 0]

    def test_cells_sum_to_n(self):
        """ht + lt + hf + lf = n."""
        rng = np.random.default_rng(0)
        predicted = rng.integers(0, 3, 50)
        labels = rng.integers(0, 3, 50)
        uncertainty = rng.uniform(0, 1, 50)

        block = EvaluationEngine(0.3).evaluate_source("a", predicted, labels, uncertainty)

        assert block.n == 50
        assert block.confusion.n == 50

    def test_all_correct_and_certain(self):
        """Todas corretas com u = 0 → limiar 0 e métricas confiáveis 1."""
        labels = np.array([0, 1, 2, 1])
        block = EvaluationEngine("auto").evaluate_source("a", labels, labels, np.zeros(4))

        assert block.threshold == 0.0
        assert block.trusted_precision == 1.0
        assert block.trusted_recall == 1.0
        assert block.trusted_f1 == 1.0
        assert block.accuracy == 1.0

    def test_fixed_threshold_without_correct_predictions(self):
        """Sem acertos e limiar fixo → sem curva e TR indefinida."""
        block = EvaluationEngine(0.5).evaluate_source(
            "a", np.array([1, 0]), np.array([0, 1]), np.array([0.2, 0.8])
        )

        assert block.curve is None
        assert block.trusted_recall is None
        assert block.trusted_f1 is None
        assert block.trusted_precision == 0.0

    def test_auto_threshold_without_correct_predictions(self):
        """Sem acertos e modo auto → NoCorrectPredictions."""
        with pytest.raises(NoCorrectPredictions):
            EvaluationEngine("auto").evaluate_source(
                "a", np.array([1, 0]), np.array([0, 1]), np.array([0.2, 0.8])
            )

    def test_invalid_threshold(self):
        """Limiar fora de [0, 1] é rejeitado."""
        with pytest.raises(InvalidInput):
            EvaluationEngine(threshold=1.2)

    def test_empty_source(self):
        """Fonte sem amostras → InvalidInput."""
        with pytest.raises(InvalidInput):
            EvaluationEngine(0.5).evaluate_source("a", np.array([]), np.array([]), np.array([]))


class TestEvaluationReport:
    """Testes para EvaluationEngine.evaluate e EvaluationReport."""

    @pytest.fixture
    def report(self):
        sources = {
            "video": SourcePredictions(predicted=PREDICTED, uncertainty=UNCERTAINTY),
            "audio": SourcePredictions(predicted=LABELS, uncertainty=np.full(7, 0.2)),
            FUSED_SOURCE: SourcePredictions(predicted=PREDICTED, uncertainty=UNCERTAINTY / 2),
        }
        return EvaluationEngine(0.5, num_classes=3).evaluate(LABELS, sources)

    def test_sources_keep_order(self, report):
        """Ordem das fontes é preservada."""
        assert report.sources == ["video", "audio", FUSED_SOURCE]

    def test_to_dict(self, report):
        """to_dict lista um bloco por fonte, sem a curva."""
        payload = report.to_dict()

        assert [block["source"] for block in payload["sources"]] == ["video", "audio", FUSED_SOURCE]
        assert "curve" not in payload["sources"][0]
        assert payload["sources"][0]["confusion"] == {"ht": 3, "lt": 2, "hf": 1, "lf": 1, "n": 7}

    def test_perfect_source(self, report):
        """Áudio acerta tudo com u = 0.2 → todas as métricas 1."""
        audio = report["audio"]

        assert audio.accuracy == 1.0
        assert audio.trusted_f1 == 1.0
        assert audio.mean_uncertainty == pytest.approx(0.2)
