"""
Evidence Core - de logits a evidências e opiniões.

    e_c = Softplus(α_c) + 1
    b_c = (e_c − 1) / S,   u = C / S,   S = Σ_c e_c

S é somada com as evidências divididas pela maior delas, então logits
finitos próximos do limite do float não estouram a soma.

A API escalar opera sobre os tipos imutáveis de src.models; a API em lote
(sufixo _batch) opera sobre arrays numpy com eixo de amostras à esquerda e é
a usada no treinamento. As funções *_vjp propagam gradientes para trás.
"""

import math
from typing import Sequence, Tuple

import numpy as np
from scipy.special import expit

from src.exceptions import InvalidEvidence, InvalidInput, InvalidOpinion, NotNormalized
from src.models.opinions import Evidence, Opinion

# Acima deste valor softplus(x) ≈ x; abaixo de −SOFTPLUS_THRESHOLD, ≈ exp(x)
SOFTPLUS_THRESHOLD = 30.0

# Tolerância de opiniões vindas de arquivo
PARTS_TOLERANCE = 1e-9


def softplus(x: np.ndarray) -> np.ndarray:
    """
    Softplus sem overflow, avaliado por partes.

    Para x > 30 retorna x + exp(−x) (a cauda mantém a função monótona na
    emenda); para x < −30 retorna exp(x); no meio, log(1 + exp(x)).
    """
    x = np.asarray(x, dtype=float)
    middle = np.log1p(np.exp(np.clip(x, -SOFTPLUS_THRESHOLD, SOFTPLUS_THRESHOLD)))
    high = x + np.exp(-np.maximum(x, SOFTPLUS_THRESHOLD))
    low = np.exp(np.minimum(x, -SOFTPLUS_THRESHOLD))
    return np.where(x > SOFTPLUS_THRESHOLD, high, np.where(x < -SOFTPLUS_THRESHOLD, low, middle))


def softplus_derivative(x: np.ndarray) -> np.ndarray:
    """Derivada da softplus por partes (sigmoide no trecho central)."""
    x = np.asarray(x, dtype=float)
    high = 1.0 - np.exp(-np.maximum(x, SOFTPLUS_THRESHOLD))
    low = np.exp(np.minimum(x, -SOFTPLUS_THRESHOLD))
    return np.where(x > SOFTPLUS_THRESHOLD, high, np.where(x < -SOFTPLUS_THRESHOLD, low, expit(x)))


# API escalar
def _validate_logits(logits: Sequence[float]) -> np.ndarray:
    values = np.asarray(logits, dtype=float)
    if values.ndim != 1 or values.size < 2:
        raise InvalidInput(f"Logits must be a vector with at least 2 classes, got shape {values.shape}")
    if not np.all(np.isfinite(values)):
        raise InvalidInput("Logits must be finite")
    return values


def evidence_from_logits(logits: Sequence[float]) -> Evidence:
    """
    Converte logits em evidências, e = Softplus(α) + 1.

    Args:
        logits: Saídas do classificador (comprimento C ≥ 2, finitas)

    Returns:
        Evidence com todas as entradas ≥ 1

    Raises:
        InvalidInput: Se há valor não finito ou menos de 2 classes
    """
    values = _validate_logits(logits)
    return Evidence(values=tuple(softplus(values) + 1.0))


def opinion_from_evidence(evidence: Evidence) -> Opinion:
    """
    Calcula a opinião de uma modalidade a partir da evidência.

    Raises:
        InvalidEvidence: Se alguma evidência é menor que 1
    """
    values = evidence.as_array()
    if np.any(values < 1.0):
        raise InvalidEvidence(f"Evidence entries must be >= 1, got min {values.min()!r}")
    scale = float(values.max())
    strength = math.fsum(values / scale)
    beliefs = (values - 1.0) / scale / strength
    uncertainty = values.size / scale / strength
    return Opinion(beliefs=tuple(beliefs), uncertainty=uncertainty)


def opinion_from_logits(logits: Sequence[float]) -> Opinion:
    """Atalho: logits → evidência → opinião."""
    return opinion_from_evidence(evidence_from_logits(logits))


def opinion_from_parts(beliefs: Sequence[float], uncertainty: float) -> Opinion:
    """
    Constrói uma opinião a partir de componentes explícitos.

    O resíduo de arredondamento (≤ 1e−9) é removido dividindo pela soma exata.

    Raises:
        InvalidOpinion: Se algum componente é negativo
        NotNormalized: Se |Σ b + u − 1| > 1e−9
    """
    values = [float(b) for b in beliefs]
    uncertainty = float(uncertainty)
    if not all(math.isfinite(v) for v in values) or not math.isfinite(uncertainty):
        raise InvalidInput("Opinion components must be finite")
    if min(values) < 0.0 or uncertainty < 0.0:
        raise InvalidOpinion("Opinion components must be non-negative")

    total = math.fsum(values) + uncertainty
    if abs(total - 1.0) > PARTS_TOLERANCE:
        raise NotNormalized(total, PARTS_TOLERANCE)

    return Opinion(
        beliefs=tuple(v / total for v in values),
        uncertainty=uncertainty / total,
    )


def predicted_class(opinion: Opinion) -> int:
    """Classe de maior crença; empates vão para o menor índice."""
    return int(np.argmax(opinion.beliefs))


# API em lote
def evidence_batch(logits: np.ndarray) -> np.ndarray:
    """Evidências de uma matriz (N, C) de logits."""
    logits = np.asarray(logits, dtype=float)
    if not np.all(np.isfinite(logits)):
        raise InvalidInput("Logits must be finite")
    return softplus(logits) + 1.0


def opinion_batch(evidence: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Opiniões de uma matriz (N, C) de evidências.

    Returns:
        Tupla (beliefs (N, C), uncertainty (N,))
    """
    evidence = np.asarray(evidence, dtype=float)
    scale = evidence.max(axis=1)
    strength = (evidence / scale[:, None]).sum(axis=1)
    beliefs = (evidence - 1.0) / scale[:, None] / strength[:, None]
    uncertainty = evidence.shape[1] / scale / strength
    return beliefs, uncertainty


def opinions_from_logits_batch(logits: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    return opinion_batch(evidence_batch(logits))


def predicted_classes_batch(beliefs: np.ndarray) -> np.ndarray:
    return np.argmax(beliefs, axis=1)


def opinion_vjp(
    evidence: np.ndarray,
    beliefs: np.ndarray,
    uncertainty: np.ndarray,
    grad_beliefs: np.ndarray,
    grad_uncertainty: np.ndarray,
) -> np.ndarray:
    """
    Gradiente em relação às evidências dado o gradiente na opinião.

        ∂L/∂e_j = (g_b_j − Σ_c g_b_c b_c − g_u u) / S
    """
    strength = evidence.sum(axis=1)
    projection = (grad_beliefs * beliefs).sum(axis=1) + grad_uncertainty * uncertainty
    return (grad_beliefs - projection[:, None]) / strength[:, None]


def evidence_vjp(logits: np.ndarray, grad_evidence: np.ndarray) -> np.ndarray:
    """Gradiente em relação aos logits (derivada da softplus)."""
    return grad_evidence * softplus_derivative(logits)
