"""
Módulo de treinamento: dados sintéticos, cabeças lineares, treino e experimentos.
"""

from .experiments import (
    FusionComparison,
    LossComparison,
    NoiseLevelResult,
    NoiseSweepResult,
    TrainingRun,
    VariantOutcome,
    run_ablation,
    run_fusion_comparison,
    run_loss_comparison,
    run_noise_sweep,
    run_training,
)
from .heads import ModalityHead, forward, normalize_features
from .pipelines import PIPELINES, EarlyFusionPipeline, LateFusionPipeline, TrustedPipeline
from .synthetic import MODALITIES, MultimodalDataset, generate_synthetic, split_dataset
from .trainer import TrainedModel, TrainHistory, TrainRecord, targets_for, train

__all__ = [
    "EarlyFusionPipeline",
    "FusionComparison",
    "LateFusionPipeline",
    "LossComparison",
    "MODALITIES",
    "ModalityHead",
    "MultimodalDataset",
    "NoiseLevelResult",
    "NoiseSweepResult",
    "PIPELINES",
    "TrainHistory",
    "TrainRecord",
    "TrainedModel",
    "TrainingRun",
    "TrustedPipeline",
    "VariantOutcome",
    "forward",
    "generate_synthetic",
    "normalize_features",
    "run_ablation",
    "run_fusion_comparison",
    "run_loss_comparison",
    "run_noise_sweep",
    "run_training",
    "split_dataset",
    "targets_for",
    "train",
]
