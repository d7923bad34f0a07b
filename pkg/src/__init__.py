"""
trusted-fusion: classificação multimodal confiável.

Este pacote converte logits em opiniões subjetivas, combina opiniões de
modalidades pela regra de Dempster reduzida, treina cabeças com a loss
confiável e avalia predições pela taxonomia alta/baixa confiança.
"""

__version__ = "0.1.0"
__author__ = "Francisco Breno"
__email__ = "fbreno.dev@gmail.com"

# Facilitadores de importação para usuários do pacote
from src.models import Evidence, Opinion, TrustedTarget, PredictionRecord, ExperimentConfig
from src.evidence import evidence_from_logits, opinion_from_evidence, opinion_from_logits
from src.fusion import combine_pair, combine_many, conflict
from src.loss import trusted_ce, overall_loss, one_hot_target
from src.metrics import EvaluationEngine, EvaluationReport, select_threshold, pr_curve
from src.parsers import RecordParser, read_records

__all__ = [
    "__version__",
    "Evidence",
    "Opinion",
    "TrustedTarget",
    "PredictionRecord",
    "ExperimentConfig",
    "evidence_from_logits",
    "opinion_from_evidence",
    "opinion_from_logits",
    "combine_pair",
    "combine_many",
    "conflict",
    "trusted_ce",
    "overall_loss",
    "one_hot_target",
    "EvaluationEngine",
    "EvaluationReport",
    "select_threshold",
    "pr_curve",
    "RecordParser",
    "read_records",
]
