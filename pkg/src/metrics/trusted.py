"""
Critério de avaliação confiável.

Matriz de confusão confiável (confiança × acerto):

                  correta   incorreta
    alta conf.      HT         HF
    baixa conf.     LT         LF

Alta confiança significa incerteza ≤ limiar. Razões com denominador vazio
são indefinidas e retornadas como None.
"""

from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np
from sklearn.metrics import accuracy_score, f1_score

from src.exceptions import InvalidInput, NoCorrectPredictions, NoValidThreshold
from src.models.evaluation import PRCurve, PRPoint, TrustCell, TrustedConfusion, TrustedPrediction

# Diferenças de |TP − TR| abaixo disto são empate
TIE_TOLERANCE = 1e-12


class PlainMetrics(NamedTuple):
    """Métricas usuais, ignorando a incerteza."""

    accuracy: float
    macro_f1: float
    weighted_f1: float


def _check_cutoff(uncertainty_cutoff: float) -> None:
    if not 0.0 <= uncertainty_cutoff <= 1.0:
        raise InvalidInput(f"Uncertainty cutoff must be in [0, 1], got {uncertainty_cutoff!r}")


def classify_trust(p: TrustedPrediction, uncertainty_cutoff: float) -> TrustCell:
    """Célula HT/LT/HF/LF de uma predição."""
    _check_cutoff(uncertainty_cutoff)
    high = p.uncertainty <= uncertainty_cutoff
    if p.is_correct:
        return TrustCell.HT if high else TrustCell.LT
    return TrustCell.HF if high else TrustCell.LF


def _as_arrays(predictions: Sequence[TrustedPrediction]) -> Tuple[np.ndarray, np.ndarray]:
    if not predictions:
        raise InvalidInput("At least one prediction is required")
    correct = np.array([p.is_correct for p in predictions], dtype=bool)
    uncertainty = np.array([p.uncertainty for p in predictions], dtype=float)
    return correct, uncertainty


def confusion_from_arrays(
    correct: np.ndarray,
    uncertainty: np.ndarray,
    uncertainty_cutoff: float,
) -> TrustedConfusion:
    high = uncertainty <= uncertainty_cutoff
    return TrustedConfusion(
        ht=int(np.sum(high & correct)),
        lt=int(np.sum(~high & correct)),
        hf=int(np.sum(high & ~correct)),
        lf=int(np.sum(~high & ~correct)),
    )


def confusion(predictions: Sequence[TrustedPrediction], uncertainty_cutoff: float) -> TrustedConfusion:
    """
    Conta as células da matriz confiável.

    Raises:
        InvalidInput: Se não há predições ou o limiar está fora de [0, 1]
    """
    _check_cutoff(uncertainty_cutoff)
    correct, uncertainty = _as_arrays(predictions)
    return confusion_from_arrays(correct, uncertainty, uncertainty_cutoff)


def trusted_precision(c: TrustedConfusion) -> Optional[float]:
    """TP = HT / (HT + HF); None se não há predições de alta confiança."""
    denominator = c.ht + c.hf
    return c.ht / denominator if denominator else None


def trusted_recall(c: TrustedConfusion) -> Optional[float]:
    """TR = HT / (HT + LT); None se não há predições corretas."""
    denominator = c.ht + c.lt
    return c.ht / denominator if denominator else None


def trusted_f1(tp: Optional[float], tr: Optional[float]) -> Optional[float]:
    """Média harmônica de TP e TR; 0 quando ambos são 0."""
    if tp is None or tr is None:
        return None
    if tp + tr == 0.0:
        return 0.0
    return 2.0 * tp * tr / (tp + tr)


def trusted_accuracy(c: TrustedConfusion) -> Optional[float]:
    """Acertos de alta confiança sobre todas as predições de alta confiança."""
    return trusted_precision(c)


def plain_metrics(predictions: Sequence[TrustedPrediction]) -> PlainMetrics:
    """
    Acurácia, F1 macro e F1 ponderado pelo suporte.

    Raises:
        InvalidInput: Se não há predições
    """
    if not predictions:
        raise InvalidInput("At least one prediction is required")
    y_true = [p.true_class for p in predictions]
    y_pred = [p.predicted_class for p in predictions]
    return plain_metrics_from_arrays(np.asarray(y_true), np.asarray(y_pred))


def plain_metrics_from_arrays(y_true: np.ndarray, y_pred: np.ndarray) -> PlainMetrics:
    return PlainMetrics(
        accuracy=float(accuracy_score(y_true, y_pred)),
        macro_f1=float(f1_score(y_true, y_pred, average="macro", zero_division=0)),
        weighted_f1=float(f1_score(y_true, y_pred, average="weighted", zero_division=0)),
    )


def candidate_cutoffs(uncertainty: np.ndarray) -> np.ndarray:
    """0, pontos médios entre incertezas distintas consecutivas, e 1."""
    levels = np.unique(uncertainty)
    midpoints = (levels[:-1] + levels[1:]) / 2.0
    return np.unique(np.concatenate(([0.0], midpoints, [1.0])))


def pr_curve_from_arrays(correct: np.ndarray, uncertainty: np.ndarray) -> PRCurve:
    total_correct = int(np.sum(correct))
    if total_correct == 0:
        raise NoCorrectPredictions("Trusted recall is undefined without correct predictions")

    correct_u = np.sort(uncertainty[correct])
    wrong_u = np.sort(uncertainty[~correct])

    points = []
    for cutoff in candidate_cutoffs(uncertainty):
        ht = int(np.searchsorted(correct_u, cutoff, side="right"))
        hf = int(np.searchsorted(wrong_u, cutoff, side="right"))
        defined = ht + hf > 0
        points.append(PRPoint(
            threshold=float(cutoff),
            trusted_recall=ht / total_correct,
            trusted_precision=ht / (ht + hf) if defined else 0.0,
            precision_defined=defined,
        ))
    return PRCurve(points=tuple(points))


def pr_curve(predictions: Sequence[TrustedPrediction]) -> PRCurve:
    """
    Curva P-R confiável sobre os limiares candidatos.

    Raises:
        InvalidInput: Se não há predições
        NoCorrectPredictions: Se nenhuma predição é correta
    """
    correct, uncertainty = _as_arrays(predictions)
    return pr_curve_from_arrays(correct, uncertainty)


def select_threshold(curve: PRCurve) -> float:
    """
    Limiar onde a curva P-R encontra a reta TP = TR.

    Minimiza |TP − TR| entre os pontos com TP definida; empates vão para o
    menor limiar.

    Raises:
        NoValidThreshold: Se nenhum ponto tem TP definida
    """
    best_threshold = None
    best_gap = float("inf")
    for point in curve.points:
        if not point.precision_defined:
            continue
        gap = abs(point.trusted_precision - point.trusted_recall)
        if gap < best_gap - TIE_TOLERANCE:
            best_gap = gap
            best_threshold = point.threshold

    if best_threshold is None:
        raise NoValidThreshold("No point of the curve has a defined trusted precision")
    return best_threshold
