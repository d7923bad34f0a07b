"""
Treinamento por gradiente descendente em batch completo.

Cada época avalia a loss média e os gradientes no conjunto inteiro, registra
o estado antes da atualização e dá um passo sem momento. O registro da época
0 é o estado inicial.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import structlog

from src.evidence.core import predicted_classes_batch
from src.exceptions import InvalidInput, TrainingDiverged
from src.metrics.engine import SourcePredictions
from src.models.config import LossKind, TrainConfig
from src.training.heads import ModalityHead
from src.training.pipelines import FusionPipeline, TrustedPipeline
from src.training.synthetic import MultimodalDataset

logger = structlog.get_logger()


@dataclass(frozen=True)
class TrainRecord:
    """Estado de uma época, medido antes da atualização."""

    epoch: int
    overall_loss: float
    branch_losses: Dict[str, float]
    train_accuracy: float
    mean_fused_uncertainty: float
    max_residual: float

    def to_row(self) -> dict:
        row = {"epoch": self.epoch, "overall_loss": self.overall_loss}
        row.update({f"{name}_loss": value for name, value in self.branch_losses.items()})
        row.update({
            "train_accuracy": self.train_accuracy,
            "mean_fused_uncertainty": self.mean_fused_uncertainty,
            "max_residual": self.max_residual,
        })
        return row


@dataclass
class TrainHistory:
    """Registros por época de um treinamento."""

    loss_kind: LossKind
    pipeline: str
    records: List[TrainRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def losses(self) -> List[float]:
        return [record.overall_loss for record in self.records]

    @property
    def accuracies(self) -> List[float]:
        return [record.train_accuracy for record in self.records]

    @property
    def final(self) -> TrainRecord:
        return self.records[-1]

    def to_frame(self) -> pd.DataFrame:
        """Uma linha por época, colunas na ordem de TrainRecord.to_row."""
        return pd.DataFrame([record.to_row() for record in self.records])


@dataclass(frozen=True)
class TrainedModel:
    """Cabeças treinadas e o pipeline que as combina; imutável."""

    pipeline: FusionPipeline
    heads: Tuple[ModalityHead, ...]

    def predict(self, dataset: MultimodalDataset) -> Dict[str, SourcePredictions]:
        return self.pipeline.predict(self.heads, self.pipeline.inputs(dataset))


def targets_for(labels: np.ndarray, num_classes: int, target_uncertainty: float) -> Tuple[np.ndarray, np.ndarray]:
    """Alvos confiáveis em lote: crença 1 − u_i no rótulo, u_i na incerteza."""
    if labels.size and (labels.min() < 0 or labels.max() >= num_classes):
        raise InvalidInput(f"Labels must be in [0, {num_classes})")
    beliefs = np.zeros((labels.size, num_classes))
    beliefs[np.arange(labels.size), labels] = 1.0 - target_uncertainty
    return beliefs, np.full(labels.size, target_uncertainty)


def train(
    dataset: MultimodalDataset,
    config: TrainConfig,
    pipeline: Optional[FusionPipeline] = None,
    heads: Optional[Sequence[ModalityHead]] = None,
) -> Tuple[TrainedModel, TrainHistory]:
    """
    Treina as cabeças de um pipeline sobre o dataset.

    Args:
        dataset: Dados de treino
        config: Hiperparâmetros
        pipeline: Pipeline de fusão (padrão: combinação de crenças)
        heads: Cabeças iniciais; se None, inicializadas com config.seed

    Returns:
        Tupla (modelo treinado, histórico)

    Raises:
        InvalidInput: Se o dataset é vazio
        TrainingDiverged: Se a loss deixa de ser finita
    """
    if len(dataset) == 0:
        raise InvalidInput("Cannot train on an empty dataset")

    pipeline = pipeline or TrustedPipeline()
    if heads is None:
        rng = np.random.default_rng(config.seed)
        heads = pipeline.init_heads(dataset, rng, config.init_scale, config.normalize_features)
    heads = list(heads)

    inputs = pipeline.inputs(dataset)
    target_beliefs, target_uncertainty = targets_for(
        dataset.labels, dataset.num_classes, config.target_uncertainty
    )
    history = TrainHistory(loss_kind=config.loss, pipeline=pipeline.name)

    logger.info(
        "[train] - training_started",
        pipeline=pipeline.name,
        loss=config.loss.value,
        samples=len(dataset),
        epochs=config.epochs,
        learning_rate=config.learning_rate,
        seed=config.seed,
    )

    for epoch in range(config.epochs):
        try:
            objective = pipeline.objective(heads, inputs, target_beliefs, target_uncertainty, config.loss)
        except InvalidInput:
            # logits não finitos
            logger.error("[train] - training_diverged", epoch=epoch, loss=float("nan"))
            raise TrainingDiverged(epoch, float("nan")) from None
        if not np.isfinite(objective.loss):
            logger.error("[train] - training_diverged", epoch=epoch, loss=objective.loss)
            raise TrainingDiverged(epoch, objective.loss)

        predicted = predicted_classes_batch(objective.fused_beliefs)
        record = TrainRecord(
            epoch=epoch,
            overall_loss=objective.loss,
            branch_losses=objective.branch_losses,
            train_accuracy=float(np.mean(predicted == dataset.labels)),
            mean_fused_uncertainty=float(np.mean(objective.fused_uncertainty)),
            max_residual=objective.residual,
        )
        history.records.append(record)

        if epoch % config.log_every == 0:
            logger.info(
                "[train] - epoch_completed",
                epoch=epoch,
                loss=record.overall_loss,
                accuracy=record.train_accuracy,
                mean_fused_uncertainty=record.mean_fused_uncertainty,
            )

        try:
            heads = [
                head.step(grad_w, grad_b, config.learning_rate)
                for head, (grad_w, grad_b) in zip(heads, objective.grads)
            ]
        except InvalidInput:
            logger.error("[train] - parameters_not_finite", epoch=epoch)
            raise TrainingDiverged(epoch, float("nan")) from None

    logger.info(
        "[train] - training_completed",
        pipeline=pipeline.name,
        final_loss=history.final.overall_loss,
        final_accuracy=history.final.train_accuracy,
    )
    return TrainedModel(pipeline=pipeline, heads=tuple(heads)), history
