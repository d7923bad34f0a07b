"""
Módulo de exportação: tabelas TSV, relatórios JSON e figuras HTML.
"""

from .plots import confusion_heatmap_figure, pr_curves_figure, training_curves_figure, write_figure
from .tables import (
    curve_frame,
    history_frame,
    write_curves,
    write_history,
    write_json,
    write_lines,
    write_tsv,
)

__all__ = [
    "confusion_heatmap_figure",
    "curve_frame",
    "history_frame",
    "pr_curves_figure",
    "training_curves_figure",
    "write_curves",
    "write_figure",
    "write_history",
    "write_json",
    "write_lines",
    "write_tsv",
]
