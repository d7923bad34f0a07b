"""
Combinação de crenças - regra de Dempster-Shafer reduzida.

Para duas opiniões (b¹, u¹) e (b², u²) sobre as mesmas C classes:

    k   = Σ_{i≠j} b¹_i b²_j
    b_c = (b¹_c b²_c + b¹_c u² + b²_c u¹) / (1 − k)
    u   = u¹ u² / (1 − k)

Os elementos focais são as classes isoladas e o quadro inteiro Θ (massa u).
O resultado é renormalizado pela soma exata dos componentes.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
import structlog

from src.exceptions import DimensionMismatch, InvalidInput, TotalConflict
from src.models.opinions import Opinion

logger = structlog.get_logger()

# 1 − k abaixo deste valor é tratado como conflito total
CONFLICT_EPSILON = 1e-12


def _check_dimensions(a: Opinion, b: Opinion) -> None:
    if a.num_classes != b.num_classes:
        raise DimensionMismatch(a.num_classes, b.num_classes)


def conflict(a: Opinion, b: Opinion) -> float:
    """
    Conflito k entre duas opiniões: massa atribuída a pares de classes distintas.

    Raises:
        DimensionMismatch: Se o número de classes difere
    """
    _check_dimensions(a, b)
    beliefs_a, beliefs_b = a.as_array(), b.as_array()
    k = beliefs_a.sum() * beliefs_b.sum() - np.dot(beliefs_a, beliefs_b)
    return float(min(max(k, 0.0), 1.0))


def combine_pair(a: Opinion, b: Opinion) -> Opinion:
    """
    Combina duas opiniões pela regra reduzida.

    Raises:
        DimensionMismatch: Se o número de classes difere
        TotalConflict: Se 1 − k < CONFLICT_EPSILON
    """
    _check_dimensions(a, b)
    beliefs, uncertainty = combine_batch(
        a.as_array()[None, :], np.array([a.uncertainty]),
        b.as_array()[None, :], np.array([b.uncertainty]),
    )
    return Opinion(beliefs=tuple(beliefs[0]), uncertainty=float(uncertainty[0]))


def combine_many(opinions: Sequence[Opinion]) -> Opinion:
    """
    Dobra à esquerda de combine_pair sobre uma sequência de opiniões.

    Raises:
        InvalidInput: Se a sequência é vazia
        DimensionMismatch: Se o número de classes difere
        TotalConflict: Propagado de combine_pair
    """
    if not opinions:
        raise InvalidInput("combine_many needs at least one opinion")
    fused = opinions[0]
    for opinion in opinions[1:]:
        fused = combine_pair(fused, opinion)
    return fused


# API em lote
def conflict_batch(beliefs_a: np.ndarray, beliefs_b: np.ndarray) -> np.ndarray:
    """Conflito k por linha, (Σa)(Σb) − Σ a_c b_c."""
    return beliefs_a.sum(axis=1) * beliefs_b.sum(axis=1) - (beliefs_a * beliefs_b).sum(axis=1)


def _raw_masses(
    beliefs_a: np.ndarray,
    uncertainty_a: np.ndarray,
    beliefs_b: np.ndarray,
    uncertainty_b: np.ndarray,
) -> Tuple[np.ndarray, np.ndarray]:
    """Numeradores da combinação: m_c e n = u¹u²."""
    masses = (
        beliefs_a * beliefs_b
        + beliefs_a * uncertainty_b[:, None]
        + beliefs_b * uncertainty_a[:, None]
    )
    return masses, uncertainty_a * uncertainty_b


def combine_batch(
    beliefs_a: np.ndarray,
    uncertainty_a: np.ndarray,
    beliefs_b: np.ndarray,
    uncertainty_b: np.ndarray,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Combina dois lotes de opiniões linha a linha.

    Returns:
        Tupla (beliefs (N, C), uncertainty (N,))

    Raises:
        DimensionMismatch: Se o número de classes difere
        TotalConflict: Na primeira linha com 1 − k < CONFLICT_EPSILON
    """
    if beliefs_a.shape[1] != beliefs_b.shape[1]:
        raise DimensionMismatch(beliefs_a.shape[1], beliefs_b.shape[1])

    k = conflict_batch(beliefs_a, beliefs_b)
    normalizer = 1.0 - k
    saturated = np.flatnonzero(normalizer < CONFLICT_EPSILON)
    if saturated.size:
        index = int(saturated[0])
        logger.warning(
            "[combine_batch] - total_conflict",
            sample=index,
            conflict=float(k[index]),
        )
        raise TotalConflict(float(k[index]), index=index if beliefs_a.shape[0] > 1 else None)

    masses, joint = _raw_masses(beliefs_a, uncertainty_a, beliefs_b, uncertainty_b)
    beliefs = masses / normalizer[:, None]
    uncertainty = joint / normalizer

    # renormalização pela soma exata
    total = beliefs.sum(axis=1) + uncertainty
    return beliefs / total[:, None], uncertainty / total


def combine_vjp(
    beliefs_a: np.ndarray,
    uncertainty_a: np.ndarray,
    beliefs_b: np.ndarray,
    uncertainty_b: np.ndarray,
    grad_beliefs: np.ndarray,
    grad_uncertainty: np.ndarray,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Propaga o gradiente da opinião combinada para as duas entradas.

    O resultado renormalizado é (m, n) / Z com Z = Σ m + n; o fator 1/(1 − k)
    se cancela na renormalização.

    Returns:
        Tupla (grad_beliefs_a, grad_uncertainty_a, grad_beliefs_b, grad_uncertainty_b)
    """
    masses, joint = _raw_masses(beliefs_a, uncertainty_a, beliefs_b, uncertainty_b)
    total = masses.sum(axis=1) + joint
    fused_beliefs = masses / total[:, None]
    fused_uncertainty = joint / total

    projection = (grad_beliefs * fused_beliefs).sum(axis=1) + grad_uncertainty * fused_uncertainty
    grad_masses = (grad_beliefs - projection[:, None]) / total[:, None]
    grad_joint = (grad_uncertainty - projection) / total

    grad_beliefs_a = grad_masses * (beliefs_b + uncertainty_b[:, None])
    grad_beliefs_b = grad_masses * (beliefs_a + uncertainty_a[:, None])
    grad_uncertainty_a = (grad_masses * beliefs_b).sum(axis=1) + grad_joint * uncertainty_b
    grad_uncertainty_b = (grad_masses * beliefs_a).sum(axis=1) + grad_joint * uncertainty_a
    return grad_beliefs_a, grad_uncertainty_a, grad_beliefs_b, grad_uncertainty_b


@dataclass
class FusionTrace:
    """Entradas de cada passo da dobra, guardadas para a propagação reversa."""

    steps: List[Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]]
    beliefs: np.ndarray
    uncertainty: np.ndarray


def fuse_batch(
    beliefs: Sequence[np.ndarray],
    uncertainties: Sequence[np.ndarray],
) -> FusionTrace:
    """
    Dobra à esquerda de combine_batch sobre as modalidades.

    Args:
        beliefs: Crenças (N, C) de cada modalidade, na ordem de fusão
        uncertainties: Incertezas (N,) de cada modalidade
    """
    if not beliefs:
        raise InvalidInput("fuse_batch needs at least one modality")

    fused_beliefs, fused_uncertainty = beliefs[0], uncertainties[0]
    steps = []
    for next_beliefs, next_uncertainty in zip(beliefs[1:], uncertainties[1:]):
        steps.append((fused_beliefs, fused_uncertainty, next_beliefs, next_uncertainty))
        fused_beliefs, fused_uncertainty = combine_batch(
            fused_beliefs, fused_uncertainty, next_beliefs, next_uncertainty
        )
    return FusionTrace(steps=steps, beliefs=fused_beliefs, uncertainty=fused_uncertainty)


def fuse_vjp(
    trace: FusionTrace,
    grad_beliefs: np.ndarray,
    grad_uncertainty: np.ndarray,
) -> List[Tuple[np.ndarray, np.ndarray]]:
    """
    Propaga o gradiente da opinião fundida até cada modalidade.

    Returns:
        Lista (grad_beliefs, grad_uncertainty) por modalidade, na ordem de fusão
    """
    grads: List[Tuple[np.ndarray, np.ndarray]] = []
    carry_beliefs, carry_uncertainty = grad_beliefs, grad_uncertainty
    for beliefs_a, uncertainty_a, beliefs_b, uncertainty_b in reversed(trace.steps):
        ga_b, ga_u, gb_b, gb_u = combine_vjp(
            beliefs_a, uncertainty_a, beliefs_b, uncertainty_b,
            carry_beliefs, carry_uncertainty,
        )
        grads.append((gb_b, gb_u))
        carry_beliefs, carry_uncertainty = ga_b, ga_u
    grads.append((carry_beliefs, carry_uncertainty))
    grads.reverse()
    return grads
