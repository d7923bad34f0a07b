"""
Cabeças lineares por modalidade.

Cada cabeça produz logits α = xᵀW + b sobre as features brutas. Com
normalize=True a feature é antes projetada para norma 1 (cabeça cosseno).
Os logits seguem para o módulo de confiança e a combinação.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from src.evidence.core import opinion_from_logits
from src.exceptions import DimensionMismatch, InvalidInput
from src.fusion.combine import combine_many
from src.models.opinions import Opinion

NORM_FLOOR = 1e-12


def normalize_features(features: np.ndarray) -> np.ndarray:
    """Normaliza cada linha para norma 1 (linhas nulas continuam nulas)."""
    features = np.atleast_2d(np.asarray(features, dtype=float))
    norms = np.linalg.norm(features, axis=1, keepdims=True)
    return features / np.maximum(norms, NORM_FLOOR)


@dataclass(frozen=True)
class ModalityHead:
    """
    Classificador linear de uma modalidade.

    Attributes:
        weights: Matriz (d, C)
        bias: Vetor (C,)
        normalize: Normaliza as features antes da projeção
    """

    weights: np.ndarray
    bias: np.ndarray
    normalize: bool = False

    def __post_init__(self) -> None:
        if self.weights.ndim != 2 or self.bias.shape != (self.weights.shape[1],):
            raise DimensionMismatch(self.weights.shape[-1], self.bias.shape[-1])
        if not (np.all(np.isfinite(self.weights)) and np.all(np.isfinite(self.bias))):
            raise InvalidInput("Head parameters must be finite")

    @classmethod
    def initialize(
        cls,
        feature_dim: int,
        num_classes: int,
        rng: np.random.Generator,
        scale: float = 0.01,
        normalize: bool = False,
    ) -> "ModalityHead":
        """Pesos gaussianos com desvio scale, viés nulo."""
        return cls(
            weights=scale * rng.standard_normal((feature_dim, num_classes)),
            bias=np.zeros(num_classes),
            normalize=normalize,
        )

    @classmethod
    def zeros(cls, feature_dim: int, num_classes: int, normalize: bool = False) -> "ModalityHead":
        return cls(
            weights=np.zeros((feature_dim, num_classes)),
            bias=np.zeros(num_classes),
            normalize=normalize,
        )

    @property
    def feature_dim(self) -> int:
        return self.weights.shape[0]

    @property
    def num_classes(self) -> int:
        return self.weights.shape[1]

    def _inputs(self, features: np.ndarray) -> np.ndarray:
        features = np.atleast_2d(np.asarray(features, dtype=float))
        if features.shape[1] != self.feature_dim:
            raise DimensionMismatch(self.feature_dim, features.shape[1])
        return normalize_features(features) if self.normalize else features

    def logits(self, features: np.ndarray) -> np.ndarray:
        """Logits (N, C) de features (N, d)."""
        return self._inputs(features) @ self.weights + self.bias

    def parameter_grads(self, features: np.ndarray, grad_logits: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Gradientes (∂L/∂W, ∂L/∂b) dado ∂L/∂logits."""
        return self._inputs(features).T @ grad_logits, grad_logits.sum(axis=0)

    def step(self, grad_weights: np.ndarray, grad_bias: np.ndarray, learning_rate: float) -> "ModalityHead":
        """Novo head após um passo de gradiente descendente."""
        return ModalityHead(
            weights=self.weights - learning_rate * grad_weights,
            bias=self.bias - learning_rate * grad_bias,
            normalize=self.normalize,
        )


def forward(
    heads: Sequence[ModalityHead],
    sample: Sequence[np.ndarray],
) -> Tuple[Opinion, ...]:
    """
    Passada de uma amostra: opinião de cada modalidade e a combinada.

    Args:
        heads: Uma cabeça por modalidade (vídeo, áudio)
        sample: Vetor de features de cada modalidade

    Returns:
        Tupla (opinião de cada modalidade..., opinião combinada)

    Raises:
        DimensionMismatch: Se as dimensões não batem
        TotalConflict: Propagado da combinação
    """
    if len(heads) != len(sample):
        raise DimensionMismatch(len(heads), len(sample))
    opinions = [
        opinion_from_logits(head.logits(features)[0])
        for head, features in zip(heads, sample)
    ]
    return (*opinions, combine_many(opinions))
