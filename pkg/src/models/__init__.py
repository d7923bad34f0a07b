"""
Modelos de dados do trusted-fusion.

Tipos de valor imutáveis (dataclasses) para opiniões e avaliação, e modelos
Pydantic para registros de entrada e configurações.
"""

from src.models.config import (
    EvaluationSettings,
    ExperimentConfig,
    LossKind,
    NoiseSettings,
    OutputSettings,
    SyntheticConfig,
    TrainConfig,
)
from src.models.evaluation import PRCurve, PRPoint, TrustCell, TrustedConfusion, TrustedPrediction
from src.models.opinions import Evidence, LossBreakdown, Opinion, TrustedTarget
from src.models.records import FusedRecord, OpinionPayload, PredictionRecord

__all__ = [
    "Evidence",
    "EvaluationSettings",
    "ExperimentConfig",
    "LossBreakdown",
    "LossKind",
    "NoiseSettings",
    "Opinion",
    "OutputSettings",
    "PRCurve",
    "PRPoint",
    "FusedRecord",
    "OpinionPayload",
    "PredictionRecord",
    "SyntheticConfig",
    "TrainConfig",
    "TrustCell",
    "TrustedConfusion",
    "TrustedPrediction",
    "TrustedTarget",
]
