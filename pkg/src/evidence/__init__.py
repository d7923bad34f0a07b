"""
Módulo de evidências: logits → evidência → opinião.
"""

from .core import (
    SOFTPLUS_THRESHOLD,
    evidence_batch,
    evidence_from_logits,
    evidence_vjp,
    opinion_batch,
    opinion_from_evidence,
    opinion_from_logits,
    opinion_from_parts,
    opinion_vjp,
    opinions_from_logits_batch,
    predicted_class,
    predicted_classes_batch,
    softplus,
    softplus_derivative,
)

__all__ = [
    "SOFTPLUS_THRESHOLD",
    "evidence_batch",
    "evidence_from_logits",
    "evidence_vjp",
    "opinion_batch",
    "opinion_from_evidence",
    "opinion_from_logits",
    "opinion_from_parts",
    "opinion_vjp",
    "opinions_from_logits_batch",
    "predicted_class",
    "predicted_classes_batch",
    "softplus",
    "softplus_derivative",
]
