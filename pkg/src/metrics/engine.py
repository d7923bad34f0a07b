"""
Evaluation Engine - monta o relatório de avaliação por fonte.

Uma fonte é uma modalidade ou o resultado combinado ("fused"). Para cada
fonte o relatório traz acurácia, F1 macro e ponderado, acurácia e F1
confiáveis, o limiar usado, as células HT/LT/HF/LF e a matriz de confusão
C×C usual.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

import numpy as np
import structlog
from sklearn.metrics import confusion_matrix

from src.exceptions import InvalidInput
from src.models.evaluation import PRCurve, TrustedConfusion
from src.metrics.trusted import (
    confusion_from_arrays,
    plain_metrics_from_arrays,
    pr_curve_from_arrays,
    select_threshold,
    trusted_accuracy,
    trusted_f1,
    trusted_precision,
    trusted_recall,
)

logger = structlog.get_logger()

Threshold = Union[str, float]

FUSED_SOURCE = "fused"


@dataclass
class EvaluationBlock:
    """Métricas de uma fonte."""

    source: str
    n: int
    accuracy: float
    macro_f1: float
    weighted_f1: float
    threshold: float
    threshold_mode: str
    trusted_accuracy: Optional[float]
    trusted_precision: Optional[float]
    trusted_recall: Optional[float]
    trusted_f1: Optional[float]
    confusion: TrustedConfusion
    class_confusion: List[List[int]]
    mean_uncertainty: float
    curve: Optional[PRCurve] = None

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "n": self.n,
            "accuracy": self.accuracy,
            "macro_f1": self.macro_f1,
            "weighted_f1": self.weighted_f1,
            "threshold": self.threshold,
            "threshold_mode": self.threshold_mode,
            "trusted_accuracy": self.trusted_accuracy,
            "trusted_precision": self.trusted_precision,
            "trusted_recall": self.trusted_recall,
            "trusted_f1": self.trusted_f1,
            "confusion": self.confusion.to_dict(),
            "class_confusion": self.class_confusion,
            "mean_uncertainty": self.mean_uncertainty,
        }


@dataclass
class EvaluationReport:
    """Blocos de avaliação na ordem das fontes (modalidades, depois fused)."""

    blocks: Dict[str, EvaluationBlock] = field(default_factory=dict)

    def __getitem__(self, source: str) -> EvaluationBlock:
        return self.blocks[source]

    @property
    def sources(self) -> List[str]:
        return list(self.blocks)

    def to_dict(self) -> dict:
        return {"sources": [block.to_dict() for block in self.blocks.values()]}


class EvaluationEngine:
    """
    Engine de avaliação confiável.

    Com threshold="auto" o limiar de cada fonte é escolhido por
    select_threshold sobre a curva P-R dos próprios dados avaliados.
    """

    def __init__(self, threshold: Threshold = "auto", num_classes: Optional[int] = None):
        """
        Inicializa engine de avaliação.

        Args:
            threshold: Limiar de incerteza fixo em [0, 1] ou "auto"
            num_classes: Número de classes C (para a matriz C×C); inferido se None
        """
        if threshold != "auto" and not 0.0 <= float(threshold) <= 1.0:
            raise InvalidInput(f"Threshold must be 'auto' or in [0, 1], got {threshold!r}")
        self.threshold = threshold
        self.num_classes = num_classes

    def evaluate_source(
        self,
        source: str,
        predicted: np.ndarray,
        labels: np.ndarray,
        uncertainty: np.ndarray,
    ) -> EvaluationBlock:
        """
        Avalia uma fonte.

        Args:
            source: Nome da fonte
            predicted: Classes preditas (N,)
            labels: Classes verdadeiras (N,)
            uncertainty: Incerteza de cada predição (N,)

        Raises:
            InvalidInput: Se não há amostras
            NoCorrectPredictions / NoValidThreshold: Com threshold "auto"
        """
        predicted = np.asarray(predicted, dtype=int)
        labels = np.asarray(labels, dtype=int)
        uncertainty = np.asarray(uncertainty, dtype=float)
        if labels.size == 0:
            raise InvalidInput(f"Source '{source}' has no samples to evaluate")

        correct = predicted == labels
        plain = plain_metrics_from_arrays(labels, predicted)

        if self.threshold == "auto":
            curve = pr_curve_from_arrays(correct, uncertainty)
            threshold = select_threshold(curve)
            mode = "auto"
        else:
            curve = pr_curve_from_arrays(correct, uncertainty) if correct.any() else None
            threshold = float(self.threshold)
            mode = "fixed"

        cells = confusion_from_arrays(correct, uncertainty, threshold)
        tp = trusted_precision(cells)
        tr = trusted_recall(cells)

        num_classes = self.num_classes or int(max(predicted.max(), labels.max())) + 1
        matrix = confusion_matrix(labels, predicted, labels=list(range(num_classes)))

        block = EvaluationBlock(
            source=source,
            n=cells.n,
            accuracy=plain.accuracy,
            macro_f1=plain.macro_f1,
            weighted_f1=plain.weighted_f1,
            threshold=threshold,
            threshold_mode=mode,
            trusted_accuracy=trusted_accuracy(cells),
            trusted_precision=tp,
            trusted_recall=tr,
            trusted_f1=trusted_f1(tp, tr),
            confusion=cells,
            class_confusion=matrix.astype(int).tolist(),
            mean_uncertainty=float(np.mean(uncertainty)),
            curve=curve,
        )

        logger.debug(
            "[EvaluationEngine.evaluate_source] - source_evaluated",
            source=source,
            n=block.n,
            threshold=threshold,
            trusted_f1=block.trusted_f1,
        )
        return block

    def evaluate(
        self,
        labels: np.ndarray,
        sources: Dict[str, "SourcePredictions"],
    ) -> EvaluationReport:
        """
        Avalia todas as fontes contra os mesmos rótulos.

        Args:
            labels: Classes verdadeiras (N,)
            sources: Predições por fonte, na ordem do relatório
        """
        logger.info(
            "[EvaluationEngine.evaluate] - evaluation_started",
            sources=list(sources),
            samples=int(np.asarray(labels).size),
            threshold=self.threshold,
        )

        report = EvaluationReport()
        for name, prediction in sources.items():
            report.blocks[name] = self.evaluate_source(
                name, prediction.predicted, labels, prediction.uncertainty
            )

        logger.info("[EvaluationEngine.evaluate] - evaluation_completed", sources=len(report.blocks))
        return report


@dataclass
class SourcePredictions:
    """Classes preditas e incertezas de uma fonte."""

    predicted: np.ndarray
    uncertainty: np.ndarray
