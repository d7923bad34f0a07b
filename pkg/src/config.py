"""
Carregamento de configurações.

- Arquivo de experimento (configs/*.yaml) → ExperimentConfig
- Arquivo de aplicação (config.yaml na raiz) → AppSettings, com a seção
  environments.<ENVIRONMENT> sobrepondo os valores base

ENVIRONMENT é lido do ambiente do processo depois de carregar o .env.
"""

import os
from pathlib import Path
from typing import Any, Dict, Literal, Optional, Tuple, Type, TypeVar, Union

import structlog
import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.evidence.core import SOFTPLUS_THRESHOLD
from src.exceptions import ConfigError
from src.fusion.combine import CONFLICT_EPSILON
from src.loss.gradients import EPSILON_LOG, TAN_CLAMP
from src.models.config import ExperimentConfig

logger = structlog.get_logger()

PROJECT_ROOT = Path(__file__).parent.parent
DEFAULT_APP_CONFIG = PROJECT_ROOT / "config.yaml"

ModelT = TypeVar("ModelT", bound=BaseModel)


class LoggingSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "INFO"
    format: Literal["json", "text"] = "json"


class NumericsSettings(BaseModel):
    """
    Constantes numéricas, somente leitura.

    Os valores efetivos vivem no código; valores diferentes aqui são
    reportados por numerics_mismatches e ignorados.
    """

    model_config = ConfigDict(extra="forbid")

    conflict_epsilon: float = 1e-12
    log_epsilon: float = 1e-12
    tan_clamp: float = 1e-6
    softplus_threshold: float = 30.0


class AppSettings(BaseModel):
    """Configuração da aplicação (config.yaml)."""

    model_config = ConfigDict(extra="forbid")

    version: str = "0.1.0"
    logging: LoggingSettings = Field(default_factory=LoggingSettings)
    numerics: NumericsSettings = Field(default_factory=NumericsSettings)
    environments: Dict[str, Dict[str, Any]] = Field(default_factory=dict)


def _read_yaml(path: Union[str, Path]) -> Dict[str, Any]:
    path = Path(path)
    if not path.exists():
        raise ConfigError(str(path), "file not found")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError(str(path), f"invalid YAML: {e}") from None

    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(str(path), "top level must be a mapping")
    return data


def _validate(model: Type[ModelT], data: Dict[str, Any]) -> ModelT:
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        field_path = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise ConfigError(field_path, first["msg"]) from None


def load_experiment_config(path: Union[str, Path]) -> ExperimentConfig:
    """
    Lê e valida um arquivo de experimento.

    Raises:
        ConfigError: Arquivo ausente, YAML inválido ou campo fora do esquema
            (field_path aponta o primeiro campo inválido, ex.: 'data.classes')
    """
    config = _validate(ExperimentConfig, _read_yaml(path))
    logger.info("[load_experiment_config] - config_loaded", file=str(path), seed=config.data.seed)
    return config


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_app_settings(
    path: Optional[Union[str, Path]] = None,
    environment: Optional[str] = None,
) -> AppSettings:
    """
    Lê config.yaml aplicando a seção do ambiente ativo.

    Args:
        path: Arquivo de configuração (padrão: config.yaml na raiz do projeto)
        environment: Nome do ambiente; se None, usa a variável ENVIRONMENT
    """
    env_path = PROJECT_ROOT / ".env"
    if env_path.exists():
        load_dotenv(env_path)

    path = Path(path) if path else DEFAULT_APP_CONFIG
    data = _read_yaml(path) if path.exists() else {}
    environment = environment or os.getenv("ENVIRONMENT")

    overrides = (data.get("environments") or {}).get(environment) if environment else None
    if overrides:
        data = _merge(data, overrides)

    return _validate(AppSettings, data)


def numerics_mismatches(settings: AppSettings) -> Dict[str, Tuple[float, float]]:
    """
    Constantes de config.yaml que diferem das usadas no código.

    Returns:
        Dicionário nome → (valor configurado, valor efetivo)
    """
    effective = {
        "conflict_epsilon": CONFLICT_EPSILON,
        "log_epsilon": EPSILON_LOG,
        "tan_clamp": TAN_CLAMP,
        "softplus_threshold": SOFTPLUS_THRESHOLD,
    }
    configured = settings.numerics.model_dump()
    return {
        name: (configured[name], value)
        for name, value in effective.items()
        if configured[name] != value
    }
