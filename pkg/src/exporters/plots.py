"""
Figuras HTML (Plotly) dos experimentos.

As figuras referenciam o plotly.js pela CDN, como no restante do projeto.
"""

from pathlib import Path
from typing import Dict, Optional, Union

import plotly.graph_objects as go
import structlog
from plotly.subplots import make_subplots

from src.metrics.engine import EvaluationBlock
from src.models.evaluation import PRCurve
from src.training.trainer import TrainHistory

logger = structlog.get_logger()


def training_curves_figure(histories: Dict[str, TrainHistory], title: str = "Training curves") -> go.Figure:
    """Loss global e acurácia de treino por época, uma linha por execução."""
    fig = make_subplots(rows=1, cols=2, subplot_titles=("Overall loss", "Train accuracy"))
    for name, history in histories.items():
        epochs = [record.epoch for record in history.records]
        fig.add_trace(go.Scatter(x=epochs, y=history.losses, mode="lines", name=name, legendgroup=name), row=1, col=1)
        fig.add_trace(
            go.Scatter(x=epochs, y=history.accuracies, mode="lines", name=name, legendgroup=name, showlegend=False),
            row=1, col=2,
        )

    fig.update_xaxes(title_text="Epoch")
    fig.update_layout(title=title, height=450, hovermode="x unified")
    return fig


def pr_curves_figure(
    curves: Dict[str, PRCurve],
    thresholds: Optional[Dict[str, float]] = None,
    title: str = "Trusted P-R curves",
) -> go.Figure:
    """
    Curvas (TR, TP) por fonte, com a reta TP = TR e o limiar escolhido.

    Pontos com TP indefinida não são desenhados.
    """
    thresholds = thresholds or {}
    fig = go.Figure()
    fig.add_trace(go.Scatter(
        x=[0, 1], y=[0, 1], mode="lines", name="TP = TR",
        line=dict(dash="dash", color="gray"),
    ))

    for source, curve in curves.items():
        points = curve.defined_points()
        fig.add_trace(go.Scatter(
            x=[p.trusted_recall for p in points],
            y=[p.trusted_precision for p in points],
            mode="lines+markers",
            name=source,
            customdata=[p.threshold for p in points],
            hovertemplate="<b>%{fullData.name}</b><br>TR: %{x:.3f}<br>TP: %{y:.3f}<br>cutoff: %{customdata:.4f}<extra></extra>",
        ))
        selected = curve.point_at(thresholds[source]) if source in thresholds else None
        if selected is not None and selected.precision_defined:
            fig.add_trace(go.Scatter(
                x=[selected.trusted_recall],
                y=[selected.trusted_precision],
                mode="markers",
                marker=dict(size=12, symbol="star"),
                name=f"{source} threshold",
            ))

    fig.update_layout(
        title=title,
        xaxis_title="Trusted recall",
        yaxis_title="Trusted precision",
        xaxis=dict(range=[0, 1.02]),
        yaxis=dict(range=[0, 1.02]),
        height=500,
    )
    return fig


def confusion_heatmap_figure(block: EvaluationBlock) -> go.Figure:
    """Matriz de confusão C×C de uma fonte."""
    labels = [str(c) for c in range(len(block.class_confusion))]
    fig = go.Figure(data=go.Heatmap(
        z=block.class_confusion,
        x=labels,
        y=labels,
        colorscale="Blues",
        text=block.class_confusion,
        texttemplate="%{text}",
        textfont={"size": 12},
        colorbar=dict(title="Count"),
    ))
    fig.update_layout(
        title=f"Confusion matrix - {block.source}",
        xaxis_title="Predicted class",
        yaxis_title="True class",
        yaxis=dict(autorange="reversed"),
        height=400,
    )
    return fig


def write_figure(fig: go.Figure, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.write_html(str(path), include_plotlyjs="cdn")
    logger.info("[write_figure] - figure_written", file=str(path))
    return path
