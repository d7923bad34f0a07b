"""
Modelagem Pydantic dos registros de predição (uma linha JSON por registro).

Formato de entrada:
    {"id": "s001", "label": 2, "modalities": {"video": [..C logits..], "audio": [...]}}
"""

import math
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


class PredictionRecord(BaseModel):
    """
    Registro de predição multimodal.

    O comprimento comum dos vetores de logits (C) é verificado pelo parser,
    que conhece o número da linha e o C dos registros anteriores.
    """

    model_config = ConfigDict(
        extra="forbid",
        str_strip_whitespace=True,
        frozen=True,
    )

    id: str = Field(
        ...,
        min_length=1,
        max_length=200,
        description="Identificador do registro"
    )
    label: Optional[int] = Field(
        default=None,
        ge=0,
        description="Classe verdadeira (opcional para fusão)"
    )
    modalities: Dict[str, List[float]] = Field(
        ...,
        description="Logits por modalidade, na ordem de fusão"
    )

    @field_validator("modalities")
    @classmethod
    def modalities_not_empty(cls, value: Dict[str, List[float]]) -> Dict[str, List[float]]:
        """
        Validar que há ao menos uma modalidade e que os logits são finitos.

        Raises:
            ValueError: Se não há modalidades, se há vetor com menos de 2 classes
                ou valor não finito
        """
        if not value:
            raise ValueError("At least one modality is required")
        for name, logits in value.items():
            if len(logits) < 2:
                raise ValueError(f"Modality '{name}' needs at least 2 logits, got {len(logits)}")
            if not all(math.isfinite(x) for x in logits):
                raise ValueError(f"Modality '{name}' has non-finite logits")
        return value

    @property
    def num_classes(self) -> int:
        return len(next(iter(self.modalities.values())))

    @property
    def modality_names(self) -> List[str]:
        return list(self.modalities.keys())


class OpinionPayload(BaseModel):
    """Opinião serializada em uma linha de saída do fuse."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    beliefs: List[float] = Field(..., min_length=2)
    uncertainty: float = Field(..., ge=0, le=1)
    predicted_class: int = Field(..., ge=0)


class FusedRecord(BaseModel):
    """
    Linha de saída do fuse.

    Quando a combinação falha (conflito total) fused é None e error traz o
    diagnóstico; as opiniões por modalidade continuam presentes.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    id: str
    label: Optional[int] = None
    modalities: Dict[str, OpinionPayload]
    fused: Optional[OpinionPayload] = None
    error: Optional[str] = None
