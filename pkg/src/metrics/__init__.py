"""
Módulo de métricas confiáveis e do relatório de avaliação.
"""

from .engine import (
    FUSED_SOURCE,
    EvaluationBlock,
    EvaluationEngine,
    EvaluationReport,
    SourcePredictions,
)
from .trusted import (
    PlainMetrics,
    candidate_cutoffs,
    classify_trust,
    confusion,
    plain_metrics,
    pr_curve,
    select_threshold,
    trusted_accuracy,
    trusted_f1,
    trusted_precision,
    trusted_recall,
)

__all__ = [
    "FUSED_SOURCE",
    "EvaluationBlock",
    "EvaluationEngine",
    "EvaluationReport",
    "PlainMetrics",
    "SourcePredictions",
    "candidate_cutoffs",
    "classify_trust",
    "confusion",
    "plain_metrics",
    "pr_curve",
    "select_threshold",
    "trusted_accuracy",
    "trusted_f1",
    "trusted_precision",
    "trusted_recall",
]
