"""
Exportação de tabelas TSV e relatórios JSON.

TSVs têm uma linha de cabeçalho e números com 17 dígitos significativos;
relatórios JSON têm chaves ordenadas. A mesma entrada produz os mesmos bytes.
"""

import json
from pathlib import Path
from typing import Dict, Iterable, Union

import pandas as pd
import structlog

from src.models.evaluation import PRCurve
from src.training.trainer import TrainHistory

logger = structlog.get_logger()

FLOAT_FORMAT = "%.17g"

PathLike = Union[str, Path]


def _ensure_parent(path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_tsv(frame: pd.DataFrame, path: PathLike) -> Path:
    path = _ensure_parent(path)
    frame.to_csv(path, sep="\t", index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    logger.info("[write_tsv] - table_written", file=str(path), rows=len(frame))
    return path


def history_frame(histories: Dict[str, TrainHistory]) -> pd.DataFrame:
    """
    Uma linha por (execução, época).

    Args:
        histories: Históricos por nome de execução (ex.: loss ou método)
    """
    frames = []
    for name, history in histories.items():
        frame = history.to_frame()
        frame.insert(0, "run", name)
        frames.append(frame)
    if not frames:
        return pd.DataFrame(columns=["run", "epoch", "overall_loss"])
    return pd.concat(frames, ignore_index=True)


def curve_frame(curves: Dict[str, PRCurve]) -> pd.DataFrame:
    """Pontos (limiar, TR, TP) de cada fonte, com a coluna source."""
    rows = [
        {
            "source": source,
            "threshold": point.threshold,
            "trusted_recall": point.trusted_recall,
            "trusted_precision": point.trusted_precision,
            "precision_defined": int(point.precision_defined),
        }
        for source, curve in curves.items()
        for point in curve.points
    ]
    columns = ["source", "threshold", "trusted_recall", "trusted_precision", "precision_defined"]
    return pd.DataFrame(rows, columns=columns)


def write_history(histories: Dict[str, TrainHistory], path: PathLike) -> Path:
    return write_tsv(history_frame(histories), path)


def write_curves(curves: Dict[str, PRCurve], path: PathLike) -> Path:
    return write_tsv(curve_frame(curves), path)


def write_json(payload: dict, path: PathLike) -> Path:
    """Relatório JSON com chaves ordenadas e newline final."""
    path = _ensure_parent(path)
    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
        f.write("\n")
    logger.info("[write_json] - report_written", file=str(path))
    return path


def write_lines(lines: Iterable[str], path: PathLike) -> Path:
    """Arquivo de uma linha por registro."""
    path = _ensure_parent(path)
    count = 0
    with open(path, "w", encoding="utf-8") as f:
        for line in lines:
            f.write(line)
            f.write("\n")
            count += 1
    logger.info("[write_lines] - records_written", file=str(path), records=count)
    return path
