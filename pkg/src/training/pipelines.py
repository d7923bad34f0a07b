"""
Pipelines de fusão treináveis.

- TrustedPipeline: uma cabeça por modalidade e combinação de crenças, com a
  loss global (ramos de cada modalidade + ramo combinado).
- EarlyFusionPipeline: uma cabeça sobre as features concatenadas.
- LateFusionPipeline: média dos logits das duas cabeças, com a loss de cada
  cabeça e a da média.
"""

from dataclasses import dataclass
from typing import Dict, List, Protocol, Sequence, Tuple

import numpy as np

from src.evidence.core import opinions_from_logits_batch, predicted_classes_batch
from src.fusion.combine import fuse_batch
from src.loss.gradients import loss_and_gradients
from src.metrics.engine import FUSED_SOURCE, SourcePredictions
from src.models.config import LossKind
from src.training.heads import ModalityHead
from src.training.synthetic import MODALITIES, MultimodalDataset

Grads = List[Tuple[np.ndarray, np.ndarray]]


@dataclass
class Objective:
    """
    Avaliação da loss média no batch completo.

    Attributes:
        loss: Loss média (soma dos ramos)
        branch_losses: Loss média de cada ramo
        grads: (∂L/∂W, ∂L/∂b) de cada cabeça
        fused_beliefs: Crenças da saída combinada
        fused_uncertainty: Incerteza da saída combinada
        residual: Maior |Σ b + u − 1| entre todas as opiniões
    """

    loss: float
    branch_losses: Dict[str, float]
    grads: Grads
    fused_beliefs: np.ndarray
    fused_uncertainty: np.ndarray
    residual: float


class FusionPipeline(Protocol):
    """Interface comum dos pipelines treináveis."""

    name: str

    def init_heads(
        self,
        dataset: MultimodalDataset,
        rng: np.random.Generator,
        scale: float,
        normalize: bool = False,
    ) -> List[ModalityHead]:
        ...

    def inputs(self, dataset: MultimodalDataset) -> List[np.ndarray]:
        ...

    def objective(
        self,
        heads: Sequence[ModalityHead],
        inputs: Sequence[np.ndarray],
        target_beliefs: np.ndarray,
        target_uncertainty: np.ndarray,
        kind: LossKind,
    ) -> Objective:
        ...

    def predict(self, heads: Sequence[ModalityHead], inputs: Sequence[np.ndarray]) -> Dict[str, SourcePredictions]:
        ...


def _residual(beliefs: Sequence[np.ndarray], uncertainties: Sequence[np.ndarray]) -> float:
    return max(
        float(np.max(np.abs(b.sum(axis=1) + u - 1.0)))
        for b, u in zip(beliefs, uncertainties)
    )


def _source(logits: np.ndarray) -> SourcePredictions:
    beliefs, uncertainty = opinions_from_logits_batch(logits)
    return SourcePredictions(predicted=predicted_classes_batch(beliefs), uncertainty=uncertainty)


class TrustedPipeline:
    """Cabeças por modalidade e combinação de crenças (Dempster-Shafer)."""

    name = "combining_beliefs"

    def init_heads(
        self,
        dataset: MultimodalDataset,
        rng: np.random.Generator,
        scale: float,
        normalize: bool = False,
    ) -> List[ModalityHead]:
        return [
            ModalityHead.initialize(features.shape[1], dataset.num_classes, rng, scale, normalize)
            for features in dataset.features
        ]

    def inputs(self, dataset: MultimodalDataset) -> List[np.ndarray]:
        return dataset.features

    def objective(
        self,
        heads: Sequence[ModalityHead],
        inputs: Sequence[np.ndarray],
        target_beliefs: np.ndarray,
        target_uncertainty: np.ndarray,
        kind: LossKind,
    ) -> Objective:
        logits = [head.logits(features) for head, features in zip(heads, inputs)]
        result = loss_and_gradients(logits, target_beliefs, target_uncertainty, kind)
        n = target_beliefs.shape[0]

        names = list(MODALITIES[: len(heads)]) + [FUSED_SOURCE]
        branch_losses = {name: float(np.mean(loss)) for name, loss in zip(names, result.branch_losses)}
        grads = [
            head.parameter_grads(features, grad / n)
            for head, features, grad in zip(heads, inputs, result.logit_grads)
        ]
        return Objective(
            loss=float(np.mean(result.sample_losses)),
            branch_losses=branch_losses,
            grads=grads,
            fused_beliefs=result.fused_beliefs,
            fused_uncertainty=result.fused_uncertainty,
            residual=_residual(
                result.beliefs + [result.fused_beliefs],
                result.uncertainties + [result.fused_uncertainty],
            ),
        )

    def predict(self, heads: Sequence[ModalityHead], inputs: Sequence[np.ndarray]) -> Dict[str, SourcePredictions]:
        opinions = [opinions_from_logits_batch(head.logits(x)) for head, x in zip(heads, inputs)]
        sources = {
            name: SourcePredictions(predicted=predicted_classes_batch(b), uncertainty=u)
            for name, (b, u) in zip(MODALITIES, opinions)
        }
        trace = fuse_batch([b for b, _ in opinions], [u for _, u in opinions])
        sources[FUSED_SOURCE] = SourcePredictions(
            predicted=predicted_classes_batch(trace.beliefs),
            uncertainty=trace.uncertainty,
        )
        return sources


class EarlyFusionPipeline:
    """Uma cabeça sobre a concatenação das features das modalidades."""

    name = "early_fusion"

    def init_heads(
        self,
        dataset: MultimodalDataset,
        rng: np.random.Generator,
        scale: float,
        normalize: bool = False,
    ) -> List[ModalityHead]:
        feature_dim = sum(features.shape[1] for features in dataset.features)
        return [ModalityHead.initialize(feature_dim, dataset.num_classes, rng, scale, normalize)]

    def inputs(self, dataset: MultimodalDataset) -> List[np.ndarray]:
        return [np.hstack(dataset.features)]

    def objective(
        self,
        heads: Sequence[ModalityHead],
        inputs: Sequence[np.ndarray],
        target_beliefs: np.ndarray,
        target_uncertainty: np.ndarray,
        kind: LossKind,
    ) -> Objective:
        (head,), (features,) = heads, inputs
        result = loss_and_gradients(
            [head.logits(features)], target_beliefs, target_uncertainty, kind, include_fused=False
        )
        n = target_beliefs.shape[0]
        loss = float(np.mean(result.sample_losses))
        return Objective(
            loss=loss,
            branch_losses={FUSED_SOURCE: loss},
            grads=[head.parameter_grads(features, result.logit_grads[0] / n)],
            fused_beliefs=result.fused_beliefs,
            fused_uncertainty=result.fused_uncertainty,
            residual=_residual(result.beliefs, result.uncertainties),
        )

    def predict(self, heads: Sequence[ModalityHead], inputs: Sequence[np.ndarray]) -> Dict[str, SourcePredictions]:
        return {FUSED_SOURCE: _source(heads[0].logits(inputs[0]))}


class LateFusionPipeline:
    """Média dos logits das cabeças de cada modalidade, com pesos iguais."""

    name = "late_fusion"

    def init_heads(
        self,
        dataset: MultimodalDataset,
        rng: np.random.Generator,
        scale: float,
        normalize: bool = False,
    ) -> List[ModalityHead]:
        return TrustedPipeline().init_heads(dataset, rng, scale, normalize)

    def inputs(self, dataset: MultimodalDataset) -> List[np.ndarray]:
        return dataset.features

    def objective(
        self,
        heads: Sequence[ModalityHead],
        inputs: Sequence[np.ndarray],
        target_beliefs: np.ndarray,
        target_uncertainty: np.ndarray,
        kind: LossKind,
    ) -> Objective:
        logits = [head.logits(features) for head, features in zip(heads, inputs)]
        averaged = np.mean(logits, axis=0)
        n = target_beliefs.shape[0]

        branches = [
            loss_and_gradients([branch], target_beliefs, target_uncertainty, kind, include_fused=False)
            for branch in logits + [averaged]
        ]
        share = branches[-1].logit_grads[0] / len(heads)
        grads = [
            head.parameter_grads(features, (branch.logit_grads[0] + share) / n)
            for head, features, branch in zip(heads, inputs, branches)
        ]

        names = list(MODALITIES[: len(heads)]) + [FUSED_SOURCE]
        branch_losses = {name: float(np.mean(b.sample_losses)) for name, b in zip(names, branches)}
        return Objective(
            loss=sum(branch_losses.values()),
            branch_losses=branch_losses,
            grads=grads,
            fused_beliefs=branches[-1].fused_beliefs,
            fused_uncertainty=branches[-1].fused_uncertainty,
            residual=max(_residual(b.beliefs, b.uncertainties) for b in branches),
        )

    def predict(self, heads: Sequence[ModalityHead], inputs: Sequence[np.ndarray]) -> Dict[str, SourcePredictions]:
        logits = [head.logits(features) for head, features in zip(heads, inputs)]
        sources = {name: _source(branch) for name, branch in zip(MODALITIES, logits)}
        sources[FUSED_SOURCE] = _source(np.mean(logits, axis=0))
        return sources


PIPELINES = {
    pipeline.name: pipeline
    for pipeline in (TrustedPipeline(), EarlyFusionPipeline(), LateFusionPipeline())
}
