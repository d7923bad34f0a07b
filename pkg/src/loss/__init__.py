"""
Módulo de loss: trusted cross-entropy, loss global, variantes e gradientes.
"""

from .gradients import (
    EPSILON_LOG,
    TAN_CLAMP,
    LossGradients,
    branch_loss_and_grad,
    loss_and_gradients,
    trusted_ce_gradient,
)
from .trusted import one_hot_target, overall_loss, trusted_ce, variant_loss

__all__ = [
    "EPSILON_LOG",
    "TAN_CLAMP",
    "LossGradients",
    "branch_loss_and_grad",
    "loss_and_gradients",
    "one_hot_target",
    "overall_loss",
    "trusted_ce",
    "trusted_ce_gradient",
    "variant_loss",
]
