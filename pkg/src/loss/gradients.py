"""
Losses em lote e gradientes analíticos.

A composição logits → evidência → opinião → fusão → loss é derivada à mão;
cada etapa tem sua função *_vjp e este módulo encadeia todas elas.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from src.evidence.core import evidence_batch, evidence_vjp, opinion_batch, opinion_vjp
from src.exceptions import DimensionMismatch, InvalidInput
from src.fusion.combine import fuse_batch, fuse_vjp
from src.models.config import LossKind
from src.models.opinions import TrustedTarget

EPSILON_LOG = 1e-12
TAN_CLAMP = 1e-6


def _neg_log_terms(coefficients: np.ndarray, values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Termos −y·log(max(x, ε)) e sua derivada em x.

    Coeficiente 0 anula o termo; na região limitada a derivada é 0.
    """
    active = coefficients > 0.0
    safe = np.maximum(values, EPSILON_LOG)
    terms = np.where(active, -coefficients * np.log(safe), 0.0)
    grads = np.where(active & (values > EPSILON_LOG), -coefficients / safe, 0.0)
    return terms, grads


def _trusted_ce(
    beliefs: np.ndarray,
    uncertainty: np.ndarray,
    target_beliefs: np.ndarray,
    target_uncertainty: np.ndarray,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    belief_terms, grad_beliefs = _neg_log_terms(target_beliefs, beliefs)
    uncertainty_terms, grad_uncertainty = _neg_log_terms(target_uncertainty, uncertainty)
    return belief_terms.sum(axis=1) + uncertainty_terms, grad_beliefs, grad_uncertainty


def _cross_entropy(
    beliefs: np.ndarray,
    target_beliefs: np.ndarray,
) -> Tuple[np.ndarray, np.ndarray]:
    """CE sobre p = b / Σ b contra o alvo renormalizado sobre as classes."""
    target_mass = target_beliefs.sum(axis=1)
    targets = np.divide(
        target_beliefs,
        target_mass[:, None],
        out=np.zeros_like(target_beliefs),
        where=target_mass[:, None] > 0.0,
    )

    mass = beliefs.sum(axis=1)
    clamped = mass < EPSILON_LOG
    denominator = np.maximum(mass, EPSILON_LOG)
    probabilities = beliefs / denominator[:, None]

    terms, grad_probabilities = _neg_log_terms(targets, probabilities)
    projection = (grad_probabilities * beliefs).sum(axis=1) / denominator ** 2
    projection = np.where(clamped, 0.0, projection)
    grad_beliefs = grad_probabilities / denominator[:, None] - projection[:, None]
    return terms.sum(axis=1), grad_beliefs


def _tan_angle(uncertainty: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """θ = min(û·π/2, π/2 − TAN_CLAMP) e dθ/dû."""
    raw = uncertainty * (np.pi / 2.0)
    limit = np.pi / 2.0 - TAN_CLAMP
    angle = np.minimum(raw, limit)
    slope = np.where(raw < limit, np.pi / 2.0, 0.0)
    return angle, slope


def branch_loss_and_grad(
    beliefs: np.ndarray,
    uncertainty: np.ndarray,
    target_beliefs: np.ndarray,
    target_uncertainty: np.ndarray,
    kind: LossKind,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Loss por amostra de um ramo e gradiente em relação à opinião.

    Returns:
        Tupla (losses (N,), grad_beliefs (N, C), grad_uncertainty (N,))
    """
    if beliefs.shape != target_beliefs.shape:
        raise DimensionMismatch(target_beliefs.shape[-1], beliefs.shape[-1])

    if kind == LossKind.TRUSTED_CE:
        return _trusted_ce(beliefs, uncertainty, target_beliefs, target_uncertainty)

    ce, grad_beliefs = _cross_entropy(beliefs, target_beliefs)
    zeros = np.zeros_like(uncertainty)

    if kind == LossKind.CE:
        return ce, grad_beliefs, zeros
    if kind == LossKind.ADD_TRUSTED:
        return ce + uncertainty, grad_beliefs, zeros + 1.0
    if kind == LossKind.EXP_MUL_TRUSTED:
        return ce + np.exp(uncertainty), grad_beliefs, np.exp(uncertainty)

    angle, slope = _tan_angle(uncertainty)
    tangent = np.tan(angle)
    secant_sq = 1.0 + tangent ** 2
    if kind == LossKind.TAN_MUL_TRUSTED:
        return ce * tangent, grad_beliefs * tangent[:, None], ce * secant_sq * slope
    if kind == LossKind.TAN_ADD_TRUSTED:
        return ce + tangent, grad_beliefs, secant_sq * slope

    raise InvalidInput(f"Unknown loss kind: {kind!r}")


@dataclass
class LossGradients:
    """
    Resultado de uma passada de ida e volta pelo pipeline de combinação.

    Attributes:
        branch_losses: Loss por amostra de cada ramo (modalidades, depois o fundido)
        logit_grads: Gradiente da soma das losses por amostra em relação aos logits
        beliefs: Crenças de cada modalidade
        uncertainties: Incertezas de cada modalidade
        fused_beliefs: Crenças combinadas
        fused_uncertainty: Incerteza combinada
    """

    branch_losses: List[np.ndarray]
    logit_grads: List[np.ndarray]
    beliefs: List[np.ndarray]
    uncertainties: List[np.ndarray]
    fused_beliefs: np.ndarray
    fused_uncertainty: np.ndarray

    @property
    def sample_losses(self) -> np.ndarray:
        return np.sum(self.branch_losses, axis=0)


def loss_and_gradients(
    logits: Sequence[np.ndarray],
    target_beliefs: np.ndarray,
    target_uncertainty: np.ndarray,
    kind: LossKind = LossKind.TRUSTED_CE,
    include_fused: bool = True,
) -> LossGradients:
    """
    Loss global em lote e gradientes por modalidade.

    Cada modalidade contribui com um ramo; com include_fused e pelo menos
    duas modalidades, o resultado combinado contribui com mais um ramo cujo
    gradiente atravessa a regra de combinação até todos os logits.

    Args:
        logits: Matriz (N, C) de logits por modalidade
        target_beliefs: Crenças alvo (N, C)
        target_uncertainty: Incertezas alvo (N,)
        kind: Loss aplicada a cada ramo
        include_fused: Incluir o ramo combinado

    Raises:
        TotalConflict: Propagado da fusão
    """
    if not logits:
        raise InvalidInput("loss_and_gradients needs at least one modality")

    evidences = [evidence_batch(modality) for modality in logits]
    opinions = [opinion_batch(evidence) for evidence in evidences]
    beliefs = [b for b, _ in opinions]
    uncertainties = [u for _, u in opinions]

    branch_losses = []
    grads = []
    for modality_beliefs, modality_uncertainty in opinions:
        loss, grad_b, grad_u = branch_loss_and_grad(
            modality_beliefs, modality_uncertainty, target_beliefs, target_uncertainty, kind
        )
        branch_losses.append(loss)
        grads.append([grad_b, grad_u])

    trace = fuse_batch(beliefs, uncertainties)
    if include_fused and len(logits) > 1:
        loss, grad_b, grad_u = branch_loss_and_grad(
            trace.beliefs, trace.uncertainty, target_beliefs, target_uncertainty, kind
        )
        branch_losses.append(loss)
        for grad, (fused_grad_b, fused_grad_u) in zip(grads, fuse_vjp(trace, grad_b, grad_u)):
            grad[0] = grad[0] + fused_grad_b
            grad[1] = grad[1] + fused_grad_u

    logit_grads = []
    for modality_logits, evidence, (b, u), (grad_b, grad_u) in zip(logits, evidences, opinions, grads):
        grad_evidence = opinion_vjp(evidence, b, u, grad_b, grad_u)
        logit_grads.append(evidence_vjp(modality_logits, grad_evidence))

    return LossGradients(
        branch_losses=branch_losses,
        logit_grads=logit_grads,
        beliefs=beliefs,
        uncertainties=uncertainties,
        fused_beliefs=trace.beliefs,
        fused_uncertainty=trace.uncertainty,
    )


def trusted_ce_gradient(
    logits_per_modality: Sequence[Sequence[float]],
    target: TrustedTarget,
) -> List[np.ndarray]:
    """
    Gradiente exato da loss global de uma amostra em relação aos logits.

    Returns:
        Um vetor de gradiente (comprimento C) por modalidade
    """
    logits = [np.asarray(values, dtype=float)[None, :] for values in logits_per_modality]
    for modality in logits:
        if modality.shape[1] != target.num_classes:
            raise DimensionMismatch(target.num_classes, modality.shape[1])

    result = loss_and_gradients(
        logits,
        target.as_array()[None, :],
        np.array([target.uncertainty]),
    )
    return [grad[0] for grad in result.logit_grads]
