"""
Tipos de valor da pilha de classificação confiável.

Evidências, opiniões (subjective logic), alvos confiáveis e a decomposição
da loss. Todos são imutáveis (dataclasses congeladas sobre tuplas) e podem
ser compartilhados livremente entre threads.
"""

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from src.exceptions import InvalidEvidence, InvalidInput, InvalidOpinion, NotNormalized

# Tolerância aceita na construção direta de opiniões
OPINION_TOLERANCE = 1e-9


def _as_tuple(values: Sequence[float]) -> Tuple[float, ...]:
    return tuple(float(v) for v in values)


@dataclass(frozen=True)
class Evidence:
    """
    Evidência por classe, e_c = Softplus(α_c) + 1.

    Attributes:
        values: Vetor de evidências (comprimento C, cada entrada ≥ 1)
    """

    values: Tuple[float, ...]

    def __post_init__(self) -> None:
        values = _as_tuple(self.values)
        object.__setattr__(self, "values", values)
        if len(values) < 2:
            raise InvalidInput(f"Evidence needs at least 2 classes, got {len(values)}")
        if not all(math.isfinite(v) for v in values):
            raise InvalidInput("Evidence values must be finite")
        if min(values) < 1.0:
            raise InvalidEvidence(f"Evidence entries must be >= 1, got min {min(values)!r}")

    @property
    def num_classes(self) -> int:
        return len(self.values)

    @property
    def strength(self) -> float:
        """Soma das evidências (S); inf quando excede o maior float."""
        try:
            return math.fsum(self.values)
        except OverflowError:
            return math.inf

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


@dataclass(frozen=True)
class Opinion:
    """
    Opinião de uma modalidade: massas de crença por classe + massa de incerteza.

    Invariantes:
        - beliefs[c] ≥ 0
        - 0 ≤ uncertainty ≤ 1
        - Σ beliefs + uncertainty = 1 (tolerância OPINION_TOLERANCE)

    Attributes:
        beliefs: Massas de crença b_c (comprimento C)
        uncertainty: Massa de incerteza u
    """

    beliefs: Tuple[float, ...]
    uncertainty: float

    def __post_init__(self) -> None:
        beliefs = _as_tuple(self.beliefs)
        uncertainty = float(self.uncertainty)
        object.__setattr__(self, "beliefs", beliefs)
        object.__setattr__(self, "uncertainty", uncertainty)

        if len(beliefs) < 2:
            raise InvalidInput(f"Opinion needs at least 2 classes, got {len(beliefs)}")
        if not all(math.isfinite(b) for b in beliefs) or not math.isfinite(uncertainty):
            raise InvalidInput("Opinion components must be finite")
        if min(beliefs) < 0.0 or uncertainty < 0.0:
            raise InvalidOpinion("Opinion components must be non-negative")
        if uncertainty > 1.0 + OPINION_TOLERANCE:
            raise InvalidOpinion(f"Uncertainty must be <= 1, got {uncertainty!r}")

        total = math.fsum(beliefs) + uncertainty
        if abs(total - 1.0) > OPINION_TOLERANCE:
            raise NotNormalized(total, OPINION_TOLERANCE)

    @classmethod
    def vacuous(cls, num_classes: int) -> "Opinion":
        """Opinião vazia (b = 0, u = 1), elemento neutro da combinação."""
        return cls(beliefs=(0.0,) * num_classes, uncertainty=1.0)

    @property
    def num_classes(self) -> int:
        return len(self.beliefs)

    @property
    def residual(self) -> float:
        """Desvio |Σ b + u − 1|."""
        return abs(math.fsum(self.beliefs) + self.uncertainty - 1.0)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.beliefs, dtype=float)

    def to_dict(self) -> dict:
        return {"beliefs": list(self.beliefs), "uncertainty": self.uncertainty}


@dataclass(frozen=True)
class TrustedTarget:
    """
    Rótulo verdadeiro em forma confiável: Y_i = {b_i1, …, b_iC, u_i}.

    Attributes:
        beliefs: Crenças alvo por classe
        uncertainty: Incerteza alvo u_i
    """

    beliefs: Tuple[float, ...]
    uncertainty: float

    def __post_init__(self) -> None:
        beliefs = _as_tuple(self.beliefs)
        uncertainty = float(self.uncertainty)
        object.__setattr__(self, "beliefs", beliefs)
        object.__setattr__(self, "uncertainty", uncertainty)

        if min(beliefs) < 0.0 or uncertainty < 0.0:
            raise InvalidOpinion("Target components must be non-negative")
        total = math.fsum(beliefs) + uncertainty
        if abs(total - 1.0) > 1e-12:
            raise NotNormalized(total, 1e-12)

    @property
    def num_classes(self) -> int:
        return len(self.beliefs)

    @property
    def label(self) -> int:
        """Classe com maior crença alvo (menor índice em empate)."""
        return int(np.argmax(self.beliefs))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.beliefs, dtype=float)


@dataclass(frozen=True)
class LossBreakdown:
    """
    Decomposição da loss global: L = L^v + L^a + L^c.

    Attributes:
        video_loss: Loss do ramo de vídeo
        audio_loss: Loss do ramo de áudio
        combined_loss: Loss do resultado combinado
        overall: Soma das três
    """

    video_loss: float
    audio_loss: float
    combined_loss: float
    overall: float

    @classmethod
    def from_branches(cls, video: float, audio: float, combined: float) -> "LossBreakdown":
        return cls(
            video_loss=video,
            audio_loss=audio,
            combined_loss=combined,
            overall=video + audio + combined,
        )
