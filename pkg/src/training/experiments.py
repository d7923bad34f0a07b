"""
Experimentos sobre o benchmark sintético.

- run_training: treino + avaliação do pipeline de combinação de crenças
- run_ablation: vídeo, áudio e fused no mesmo relatório
- run_loss_comparison: uma execução por loss, mesma inicialização
- run_noise_sweep: treino limpo, ruído injetado no áudio de avaliação
- run_fusion_comparison: fusão precoce, tardia e combinação de crenças
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
import structlog
from scipy.stats import spearmanr

from src.exceptions import InvalidInput, NoCorrectPredictions, NoValidThreshold, NumericalError
from src.metrics.engine import FUSED_SOURCE, EvaluationBlock, EvaluationEngine, EvaluationReport
from src.models.config import (
    EvaluationSettings,
    ExperimentConfig,
    LossKind,
    NoiseSettings,
    TrainConfig,
)
from src.training.pipelines import PIPELINES, TrustedPipeline
from src.training.synthetic import MultimodalDataset, generate_synthetic, split_dataset
from src.training.trainer import TrainedModel, TrainHistory, train

logger = structlog.get_logger()


@dataclass
class TrainingRun:
    """Modelo, histórico e relatório de avaliação de um treinamento."""

    model: TrainedModel
    history: TrainHistory
    report: EvaluationReport


@dataclass
class VariantOutcome:
    """Resultado de uma loss na comparação; diverged guarda o diagnóstico."""

    kind: LossKind
    history: TrainHistory
    final_accuracy: Optional[float] = None
    report: Optional[EvaluationReport] = None
    diverged: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "loss": self.kind.value,
            "epochs_run": len(self.history),
            "initial_loss": self.history.losses[0] if self.history.records else None,
            "final_loss": self.history.losses[-1] if self.history.records else None,
            "initial_train_accuracy": self.history.accuracies[0] if self.history.records else None,
            "final_train_accuracy": self.history.accuracies[-1] if self.history.records else None,
            "final_accuracy": self.final_accuracy,
            "diverged": self.diverged,
            "report": self.report.to_dict() if self.report else None,
        }


@dataclass
class LossComparison:
    outcomes: Dict[LossKind, VariantOutcome] = field(default_factory=dict)

    def __getitem__(self, kind: LossKind) -> VariantOutcome:
        return self.outcomes[kind]

    def to_dict(self) -> dict:
        return {"variants": [outcome.to_dict() for outcome in self.outcomes.values()]}


@dataclass(frozen=True)
class NoiseLevelResult:
    """Avaliação com ruído de desvio sigma injetado no áudio."""

    sigma: float
    mean_audio_uncertainty: float
    mean_fused_uncertainty: float
    audio_accuracy: float
    video_accuracy: float
    fused_accuracy: float

    def to_dict(self) -> dict:
        return {
            "sigma": self.sigma,
            "mean_audio_uncertainty": self.mean_audio_uncertainty,
            "mean_fused_uncertainty": self.mean_fused_uncertainty,
            "audio_accuracy": self.audio_accuracy,
            "video_accuracy": self.video_accuracy,
            "fused_accuracy": self.fused_accuracy,
        }


@dataclass
class NoiseSweepResult:
    levels: List[NoiseLevelResult]
    history: TrainHistory

    @property
    def uncertainty_correlation(self) -> float:
        """Correlação de Spearman entre sigma e a incerteza média do áudio."""
        sigmas = [level.sigma for level in self.levels]
        uncertainties = [level.mean_audio_uncertainty for level in self.levels]
        return float(spearmanr(sigmas, uncertainties).correlation)

    def to_dict(self) -> dict:
        return {
            "levels": [level.to_dict() for level in self.levels],
            "uncertainty_spearman": self.uncertainty_correlation,
        }


@dataclass
class FusionComparison:
    """Bloco fused de cada método de fusão, na ordem de PIPELINES."""

    blocks: Dict[str, EvaluationBlock]
    histories: Dict[str, TrainHistory]

    def to_dict(self) -> dict:
        return {
            "methods": [
                {"method": name, **block.to_dict()} for name, block in self.blocks.items()
            ]
        }


def _evaluate(model: TrainedModel, dataset: MultimodalDataset, evaluation: EvaluationSettings) -> EvaluationReport:
    engine = EvaluationEngine(threshold=evaluation.threshold, num_classes=dataset.num_classes)
    return engine.evaluate(dataset.labels, model.predict(dataset))


def run_training(config: ExperimentConfig) -> TrainingRun:
    """Gera os dados, treina no split de treino e avalia no de avaliação."""
    dataset = generate_synthetic(config.data)
    return run_ablation(dataset, config.training, config.evaluation)


def run_ablation(
    dataset: MultimodalDataset,
    train_config: TrainConfig,
    evaluation: Optional[EvaluationSettings] = None,
) -> TrainingRun:
    """
    Compara vídeo, áudio e fused no split de avaliação.

    O split 80/20 (eval_fraction) é determinado por train_config.seed; o
    limiar de cada fonte vem de select_threshold sobre o split de avaliação
    quando evaluation.threshold é "auto".
    """
    evaluation = evaluation or EvaluationSettings()
    train_set, eval_set = split_dataset(dataset, evaluation.eval_fraction, train_config.seed)
    model, history = train(train_set, train_config)
    report = _evaluate(model, eval_set, evaluation)

    logger.info(
        "[run_ablation] - ablation_completed",
        **{f"{name}_trusted_f1": report[name].trusted_f1 for name in report.sources},
    )
    return TrainingRun(model=model, history=history, report=report)


def run_loss_comparison(
    dataset: MultimodalDataset,
    train_config: TrainConfig,
    evaluation: Optional[EvaluationSettings] = None,
    kinds: Sequence[LossKind] = tuple(LossKind),
) -> LossComparison:
    """
    Treina uma vez por loss com a mesma inicialização e split.

    Divergência de uma variante é registrada no resultado e não interrompe
    as demais.
    """
    evaluation = evaluation or EvaluationSettings()
    train_set, eval_set = split_dataset(dataset, evaluation.eval_fraction, train_config.seed)
    comparison = LossComparison()

    for kind in kinds:
        config = train_config.model_copy(update={"loss": kind})
        try:
            model, history = train(train_set, config)
        except NumericalError as exc:
            logger.warning("[run_loss_comparison] - variant_diverged", loss=kind.value, error=str(exc))
            comparison.outcomes[kind] = VariantOutcome(
                kind=kind,
                history=TrainHistory(loss_kind=kind, pipeline=TrustedPipeline.name),
                diverged=str(exc),
            )
            continue

        fused = model.predict(eval_set)[FUSED_SOURCE]
        final_accuracy = float(np.mean(fused.predicted == eval_set.labels))
        try:
            report = _evaluate(model, eval_set, evaluation)
        except (NoCorrectPredictions, NoValidThreshold) as exc:
            logger.warning("[run_loss_comparison] - variant_not_evaluable", loss=kind.value, error=str(exc))
            report = None

        comparison.outcomes[kind] = VariantOutcome(
            kind=kind,
            history=history,
            final_accuracy=final_accuracy,
            report=report,
        )
        logger.info(
            "[run_loss_comparison] - variant_completed",
            loss=kind.value,
            final_loss=history.final.overall_loss,
            final_accuracy=final_accuracy,
        )

    return comparison


def run_noise_sweep(
    dataset: MultimodalDataset,
    train_config: TrainConfig,
    noise: Optional[NoiseSettings] = None,
    evaluation: Optional[EvaluationSettings] = None,
) -> NoiseSweepResult:
    """
    Treina em dados limpos e avalia com ruído gaussiano no áudio.

    O ruído base é sorteado uma única vez (noise.seed) e escalado por cada
    sigma, de modo que sigma = 0 reproduz a avaliação limpa.

    Raises:
        InvalidInput: Com menos de 3 níveis
    """
    noise = noise or NoiseSettings()
    evaluation = evaluation or EvaluationSettings()
    if len(noise.levels) < 3:
        raise InvalidInput("Noise sweep needs at least 3 levels")

    train_set, eval_set = split_dataset(dataset, evaluation.eval_fraction, train_config.seed)
    model, history = train(train_set, train_config)

    base_noise = np.random.default_rng(noise.seed).standard_normal(eval_set.audio.shape)
    levels = []
    for sigma in noise.levels:
        noisy = eval_set.with_audio(eval_set.audio + sigma * base_noise)
        sources = model.predict(noisy)
        levels.append(NoiseLevelResult(
            sigma=float(sigma),
            mean_audio_uncertainty=float(np.mean(sources["audio"].uncertainty)),
            mean_fused_uncertainty=float(np.mean(sources[FUSED_SOURCE].uncertainty)),
            audio_accuracy=float(np.mean(sources["audio"].predicted == noisy.labels)),
            video_accuracy=float(np.mean(sources["video"].predicted == noisy.labels)),
            fused_accuracy=float(np.mean(sources[FUSED_SOURCE].predicted == noisy.labels)),
        ))
        logger.info(
            "[run_noise_sweep] - level_evaluated",
            sigma=sigma,
            mean_audio_uncertainty=levels[-1].mean_audio_uncertainty,
            fused_accuracy=levels[-1].fused_accuracy,
        )

    return NoiseSweepResult(levels=levels, history=history)


def run_fusion_comparison(
    dataset: MultimodalDataset,
    train_config: TrainConfig,
    evaluation: Optional[EvaluationSettings] = None,
) -> FusionComparison:
    """
    Compara fusão precoce, fusão tardia e combinação de crenças.

    Todos os métodos usam a mesma semente de inicialização e o mesmo split.
    """
    evaluation = evaluation or EvaluationSettings()
    train_set, eval_set = split_dataset(dataset, evaluation.eval_fraction, train_config.seed)

    blocks: Dict[str, EvaluationBlock] = {}
    histories: Dict[str, TrainHistory] = {}
    for name, pipeline in PIPELINES.items():
        model, history = train(train_set, train_config, pipeline=pipeline)
        report = _evaluate(model, eval_set, evaluation)
        blocks[name] = report[FUSED_SOURCE]
        histories[name] = history
        logger.info(
            "[run_fusion_comparison] - method_completed",
            method=name,
            accuracy=blocks[name].accuracy,
            trusted_f1=blocks[name].trusted_f1,
        )

    return FusionComparison(blocks=blocks, histories=histories)
