"""
Tipos da avaliação confiável: predições, matriz de confusão confiável e curva P-R.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from src.exceptions import InvalidInput


class TrustCell(str, Enum):
    """Célula da matriz de confusão confiável (confiança × acerto)."""

    HT = "HT"  # alta confiança, correta
    LT = "LT"  # baixa confiança, correta
    HF = "HF"  # alta confiança, incorreta
    LF = "LF"  # baixa confiança, incorreta


@dataclass(frozen=True)
class TrustedPrediction:
    """
    Resultado confiável de uma amostra.

    Attributes:
        predicted_class: Classe de maior crença
        true_class: Classe verdadeira
        uncertainty: Massa de incerteza da predição, em [0, 1]
    """

    predicted_class: int
    true_class: int
    uncertainty: float

    def __post_init__(self) -> None:
        if self.predicted_class < 0 or self.true_class < 0:
            raise InvalidInput("Class indices must be non-negative")
        if not 0.0 <= self.uncertainty <= 1.0:
            raise InvalidInput(f"Uncertainty must be in [0, 1], got {self.uncertainty!r}")

    @property
    def is_correct(self) -> bool:
        return self.predicted_class == self.true_class


@dataclass(frozen=True)
class TrustedConfusion:
    """
    Contagens HT/LT/HF/LF de um conjunto de predições.

    Invariante: ht + lt + hf + lf = n.
    """

    ht: int
    lt: int
    hf: int
    lf: int

    @property
    def n(self) -> int:
        return self.ht + self.lt + self.hf + self.lf

    def to_dict(self) -> dict:
        return {"ht": self.ht, "lt": self.lt, "hf": self.hf, "lf": self.lf, "n": self.n}


@dataclass(frozen=True)
class PRPoint:
    """
    Ponto da curva P-R confiável.

    Quando HT + HF = 0 a precisão é indefinida: o ponto carrega
    trusted_precision = 0.0 e precision_defined = False.
    """

    threshold: float
    trusted_recall: float
    trusted_precision: float
    precision_defined: bool = True


@dataclass(frozen=True)
class PRCurve:
    """
    Curva (limiar, TR, TP) com limiares estritamente crescentes.
    """

    points: Tuple[PRPoint, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        points = tuple(self.points)
        object.__setattr__(self, "points", points)
        for previous, current in zip(points, points[1:]):
            if not current.threshold > previous.threshold:
                raise InvalidInput("PR curve thresholds must be strictly increasing")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def thresholds(self) -> List[float]:
        return [p.threshold for p in self.points]

    def defined_points(self) -> List[PRPoint]:
        return [p for p in self.points if p.precision_defined]

    def point_at(self, threshold: float) -> Optional[PRPoint]:
        for point in self.points:
            if point.threshold == threshold:
                return point
        return None
