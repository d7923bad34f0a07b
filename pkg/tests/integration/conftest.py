"""
Fixtures dos testes de integração.

Arquivos de registros e de experimento mínimos, gravados em tmp_path.
"""

import json
from pathlib import Path

import pytest
import yaml

from .helpers import SEVEN_PREDICTIONS, logits_for

PROJECT_ROOT = Path(__file__).parent.parent.parent
DEFAULT_EXPERIMENT = PROJECT_ROOT / "configs" / "default.yaml"


@pytest.fixture
def write_records(tmp_path):
    """Fixture que grava registros em JSON Lines."""
    def _write(records: list, name: str = "records.jsonl") -> Path:
        path = tmp_path / name
        path.write_text("".join(json.dumps(r) + "\n" for r in records), encoding="utf-8")
        return path
    return _write


@pytest.fixture
def seven_records(write_records):
    """Conjunto de 7 predições de uma modalidade, rotulado."""
    return write_records([
        {"id": f"s{i}", "label": true, "modalities": {"model": logits_for(pred, u)}}
        for i, (pred, true, u) in enumerate(SEVEN_PREDICTIONS)
    ])


@pytest.fixture
def experiment_config(tmp_path):
    """Experimento pequeno derivado de configs/default.yaml."""
    def _make(data=None, training=None, remove=None) -> Path:
        config = yaml.safe_load(DEFAULT_EXPERIMENT.read_text(encoding="utf-8"))
        config["data"].update({"samples_per_class": 20, **(data or {})})
        config["training"].update({"epochs": 10, **(training or {})})
        for section, key in remove or []:
            del config[section][key]
        path = tmp_path / "experiment.yaml"
        path.write_text(yaml.safe_dump(config), encoding="utf-8")
        return path
    return _make
