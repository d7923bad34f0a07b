"""
Trusted cross-entropy e variantes de ablação.

    L_tce(Ŷ; Y) = −Σ_c b_c log b̂_c − u log û

Cada log é avaliado com argumento limitado inferiormente por EPSILON_LOG e
termos com coeficiente alvo exatamente 0 são omitidos (0·log x = 0).

Variantes (CE sobre crenças renormalizadas p = b̂ / Σ b̂):
    CE               −Σ y log p
    ADD_TRUSTED      CE + û
    TAN_MUL_TRUSTED  CE · tan(θ)
    TAN_ADD_TRUSTED  CE + tan(θ)
    EXP_MUL_TRUSTED  CE + exp(û)
com θ = min(û·π/2, π/2 − TAN_CLAMP).
"""

import math

import numpy as np

from src.exceptions import DimensionMismatch, InvalidInput, InvalidLabel
from src.loss.gradients import EPSILON_LOG, branch_loss_and_grad
from src.models.config import LossKind
from src.models.opinions import LossBreakdown, Opinion, TrustedTarget


def one_hot_target(label: int, num_classes: int, target_uncertainty: float = 0.0) -> TrustedTarget:
    """
    Constrói o alvo confiável de um rótulo.

    Args:
        label: Classe verdadeira
        num_classes: Número de classes C
        target_uncertainty: Incerteza u_i atribuída ao alvo, em [0, 1)

    Raises:
        InvalidLabel: Se label está fora de [0, C)
        InvalidInput: Se target_uncertainty está fora de [0, 1)
    """
    if not 0 <= label < num_classes:
        raise InvalidLabel(f"Label {label} out of range for {num_classes} classes")
    if not 0.0 <= target_uncertainty < 1.0:
        raise InvalidInput(f"Target uncertainty must be in [0, 1), got {target_uncertainty!r}")

    beliefs = [0.0] * num_classes
    beliefs[label] = 1.0 - target_uncertainty
    return TrustedTarget(beliefs=tuple(beliefs), uncertainty=target_uncertainty)


def _check(prediction: Opinion, target: TrustedTarget) -> None:
    if prediction.num_classes != target.num_classes:
        raise DimensionMismatch(target.num_classes, prediction.num_classes)


def _clamped_neg_log(coefficient: float, value: float) -> float:
    if coefficient == 0.0:
        return 0.0
    return -coefficient * math.log(max(value, EPSILON_LOG))


def trusted_ce(prediction: Opinion, target: TrustedTarget) -> float:
    """
    Trusted cross-entropy de uma opinião contra o alvo.

    Raises:
        DimensionMismatch: Se o número de classes difere
    """
    _check(prediction, target)
    terms = [
        _clamped_neg_log(coefficient, value)
        for coefficient, value in zip(target.beliefs, prediction.beliefs)
    ]
    terms.append(_clamped_neg_log(target.uncertainty, prediction.uncertainty))
    return math.fsum(terms)


def overall_loss(
    video_pred: Opinion,
    audio_pred: Opinion,
    fused_pred: Opinion,
    target: TrustedTarget,
) -> LossBreakdown:
    """Loss global: soma das trusted CE de vídeo, áudio e do resultado combinado."""
    return LossBreakdown.from_branches(
        video=trusted_ce(video_pred, target),
        audio=trusted_ce(audio_pred, target),
        combined=trusted_ce(fused_pred, target),
    )


def variant_loss(kind: LossKind, prediction: Opinion, target: TrustedTarget) -> float:
    """
    Avalia uma das losses de ablação.

    TRUSTED_CE delega para trusted_ce; as demais seguem a tabela do módulo.

    Raises:
        DimensionMismatch: Se o número de classes difere
    """
    _check(prediction, target)
    if kind == LossKind.TRUSTED_CE:
        return trusted_ce(prediction, target)

    losses, _, _ = branch_loss_and_grad(
        prediction.as_array()[None, :],
        np.array([prediction.uncertainty]),
        target.as_array()[None, :],
        np.array([target.uncertainty]),
        kind,
    )
    return float(losses[0])
