"""
Modelagem Pydantic das configurações de experimento.

Estas classes validam o arquivo YAML de experimento (ver configs/default.yaml)
e são consumidas pelo módulo de treinamento.
"""

from enum import Enum
from typing import List, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator


class LossKind(str, Enum):
    """Funções de loss disponíveis para treinar um ramo."""

    TRUSTED_CE = "trusted_ce"
    CE = "ce"
    ADD_TRUSTED = "add_trusted"
    TAN_MUL_TRUSTED = "tan_mul_trusted"
    TAN_ADD_TRUSTED = "tan_add_trusted"
    EXP_MUL_TRUSTED = "exp_mul_trusted"


class _StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class SyntheticConfig(_StrictModel):
    """
    Benchmark sintético de duas modalidades.

    Cada classe tem uma média por modalidade; as amostras recebem
    ruído gaussiano com desvio específico da modalidade.
    """

    classes: int = Field(..., ge=2, description="Número de classes C")
    feature_dim: int = Field(..., ge=1, description="Dimensão d das features por modalidade")
    samples_per_class: int = Field(..., ge=1, description="Amostras por classe")
    modality_noise: Tuple[float, float] = Field(
        ...,
        description="Desvio do ruído gaussiano (σ_v, σ_a)"
    )
    class_separation: float = Field(..., gt=0, description="Raio das médias de classe")
    seed: int = Field(..., description="Semente do gerador")

    @field_validator("modality_noise")
    @classmethod
    def noise_non_negative(cls, value: Tuple[float, float]) -> Tuple[float, float]:
        if min(value) < 0:
            raise ValueError("Noise standard deviations must be >= 0")
        return value

    @property
    def video_noise(self) -> float:
        return self.modality_noise[0]

    @property
    def audio_noise(self) -> float:
        return self.modality_noise[1]


class TrainConfig(_StrictModel):
    """Hiperparâmetros do gradiente descendente em batch completo."""

    learning_rate: float = Field(default=0.05, ge=0, description="Passo do gradiente")
    epochs: int = Field(default=200, ge=1, description="Número de épocas")
    target_uncertainty: float = Field(
        default=0.0,
        ge=0,
        lt=1,
        description="Incerteza u_i atribuída ao rótulo verdadeiro"
    )
    seed: int = Field(default=42, description="Semente da inicialização e do split")
    loss: LossKind = Field(default=LossKind.TRUSTED_CE, description="Loss de cada ramo")
    init_scale: float = Field(default=0.01, ge=0, description="Desvio da inicialização dos pesos")
    normalize_features: bool = Field(
        default=False,
        description="Normaliza cada feature para norma 1 antes da cabeça linear"
    )
    log_every: int = Field(default=50, ge=1, description="Intervalo de log em épocas")


class EvaluationSettings(_StrictModel):
    """Parâmetros da avaliação confiável."""

    eval_fraction: float = Field(default=0.2, gt=0, lt=1, description="Fração de avaliação")
    threshold: Union[Literal["auto"], float] = Field(
        default="auto",
        description="Limiar de incerteza fixo ou 'auto'"
    )

    @field_validator("threshold")
    @classmethod
    def threshold_in_unit_interval(cls, value: Union[str, float]) -> Union[str, float]:
        if value != "auto" and not 0.0 <= float(value) <= 1.0:
            raise ValueError("Threshold must be 'auto' or in [0, 1]")
        return value


class NoiseSettings(_StrictModel):
    """Níveis de ruído da varredura de robustez."""

    levels: List[float] = Field(
        default_factory=lambda: [0.0, 0.5, 1.0, 2.0, 4.0],
        description="Desvios do ruído injetado no áudio"
    )
    seed: int = Field(default=7, description="Semente do ruído injetado")

    @field_validator("levels")
    @classmethod
    def at_least_three_levels(cls, value: List[float]) -> List[float]:
        if len(value) < 3:
            raise ValueError("Noise sweep needs at least 3 levels")
        if min(value) < 0:
            raise ValueError("Noise levels must be >= 0")
        return value


class OutputSettings(_StrictModel):
    """Artefatos opcionais."""

    plots: bool = Field(default=False, description="Gerar figuras HTML (Plotly)")


class ExperimentConfig(_StrictModel):
    """Arquivo de experimento completo."""

    data: SyntheticConfig
    training: TrainConfig
    evaluation: EvaluationSettings = Field(default_factory=EvaluationSettings)
    noise: NoiseSettings = Field(default_factory=NoiseSettings)
    output: OutputSettings = Field(default_factory=OutputSettings)

    def with_seed(self, seed: int) -> "ExperimentConfig":
        """Retorna cópia com a semente de dados e de treino substituídas."""
        return self.model_copy(update={
            "data": self.data.model_copy(update={"seed": seed}),
            "training": self.training.model_copy(update={"seed": seed}),
        })
