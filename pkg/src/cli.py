"""
Interface de linha de comando do trusted-fusion.

Uso:
    trusted-fusion fuse --input records.jsonl --output fused.jsonl
    trusted-fusion eval --input records.jsonl --threshold auto --curve curve.tsv
    trusted-fusion train --config configs/default.yaml --output results/
    trusted-fusion ablation | losses | noise | fusion-methods --config ... --output ...

Códigos de saída: 0 sucesso, 1 erro de uso/configuração, 2 dados inválidos,
3 falha numérica.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd
import structlog

from src.config import load_app_settings, load_experiment_config, numerics_mismatches
from src.evidence.core import opinion_from_logits, opinions_from_logits_batch, predicted_class, predicted_classes_batch
from src.exceptions import (
    ConfigError,
    DataError,
    InvalidInput,
    MissingLabels,
    NumericalError,
    TotalConflict,
)
from src.exporters.plots import confusion_heatmap_figure, pr_curves_figure, training_curves_figure, write_figure
from src.exporters.tables import write_curves, write_history, write_json, write_lines, write_tsv
from src.fusion.combine import combine_many, fuse_batch
from src.logging_config import configure_logging
from src.metrics.engine import FUSED_SOURCE, EvaluationEngine, EvaluationReport, SourcePredictions
from src.models.config import ExperimentConfig
from src.models.opinions import Opinion
from src.models.records import PredictionRecord
from src.parsers.record_parser import dumps_record, read_records
from src.training.experiments import (
    run_ablation,
    run_fusion_comparison,
    run_loss_comparison,
    run_noise_sweep,
    run_training,
)
from src.training.synthetic import generate_synthetic

logger = structlog.get_logger()

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


class UsageError(Exception):
    """Argumentos de linha de comando inválidos."""
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _threshold(value: str) -> Union[str, float]:
    if value == "auto":
        return value
    try:
        threshold = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'auto' or a number in [0, 1], got {value!r}") from None
    if not 0.0 <= threshold <= 1.0:
        raise argparse.ArgumentTypeError(f"threshold must be in [0, 1], got {threshold}")
    return threshold


# fuse
def _opinion_payload(opinion: Opinion) -> dict:
    return {**opinion.to_dict(), "predicted_class": predicted_class(opinion)}


def fuse_record(record: PredictionRecord) -> dict:
    """
    Opiniões por modalidade e a combinada de um registro.

    Conflito total vira o campo error; as opiniões por modalidade permanecem.
    """
    opinions = {name: opinion_from_logits(logits) for name, logits in record.modalities.items()}
    payload = {
        "id": record.id,
        "label": record.label,
        "modalities": {name: _opinion_payload(opinion) for name, opinion in opinions.items()},
        "fused": None,
        "error": None,
    }
    try:
        payload["fused"] = _opinion_payload(combine_many(list(opinions.values())))
    except TotalConflict as e:
        logger.warning("[fuse_record] - total_conflict", record=record.id, conflict=e.conflict)
        payload["error"] = str(e)
    return payload


def cmd_fuse(input_path: Path, output_path: Optional[Path]) -> int:
    records = read_records(input_path)
    lines = [dumps_record(fuse_record(record)) for record in records]
    _emit_lines(lines, output_path)
    logger.info("[cmd_fuse] - fuse_completed", records=len(records))
    return EXIT_OK


# eval
def _sources_from_records(records: Sequence[PredictionRecord]) -> Dict[str, SourcePredictions]:
    names = records[0].modality_names
    for record in records:
        if record.modality_names != names:
            raise InvalidInput(
                f"Record '{record.id}' has modalities {record.modality_names}, expected {names}"
            )

    opinions = [
        opinions_from_logits_batch(np.array([record.modalities[name] for record in records]))
        for name in names
    ]
    sources = {
        name: SourcePredictions(predicted=predicted_classes_batch(b), uncertainty=u)
        for name, (b, u) in zip(names, opinions)
    }
    try:
        trace = fuse_batch([b for b, _ in opinions], [u for _, u in opinions])
    except TotalConflict as e:
        record = records[e.index or 0]
        raise TotalConflict(e.conflict, index=e.index, record_id=record.id) from None
    sources[FUSED_SOURCE] = SourcePredictions(
        predicted=predicted_classes_batch(trace.beliefs),
        uncertainty=trace.uncertainty,
    )
    return sources


def evaluate_records(records: Sequence[PredictionRecord], threshold: Union[str, float]) -> EvaluationReport:
    """
    Relatório confiável de registros rotulados.

    Raises:
        InvalidInput: Sem registros ou com modalidades diferentes entre registros
        MissingLabels: Se algum registro não tem rótulo
        TotalConflict: Se as modalidades de um registro se contradizem com
            certeza total; a mensagem nomeia o registro
    """
    if not records:
        raise InvalidInput("No records to evaluate")
    unlabeled = [record.id for record in records if record.label is None]
    if unlabeled:
        raise MissingLabels(unlabeled)

    labels = np.array([record.label for record in records])
    engine = EvaluationEngine(threshold=threshold, num_classes=records[0].num_classes)
    return engine.evaluate(labels, _sources_from_records(records))


def cmd_eval(
    input_path: Path,
    output_path: Optional[Path],
    threshold: Union[str, float],
    curve_path: Optional[Path],
    plots: bool,
) -> int:
    records = read_records(input_path)
    report = evaluate_records(records, threshold)
    payload = {"threshold": threshold, **report.to_dict()}

    if output_path:
        write_json(payload, output_path)
    else:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")

    curves = {name: block.curve for name, block in report.blocks.items() if block.curve is not None}
    if curve_path:
        write_curves(curves, curve_path)

    if plots:
        if not output_path:
            raise UsageError("--plots needs --output to place the figures")
        thresholds = {name: block.threshold for name, block in report.blocks.items()}
        write_figure(pr_curves_figure(curves, thresholds), output_path.with_name(f"{output_path.stem}_pr_curves.html"))
        write_figure(
            confusion_heatmap_figure(report[FUSED_SOURCE]),
            output_path.with_name(f"{output_path.stem}_confusion.html"),
        )
    return EXIT_OK


# experimentos
def _load_config(config_path: Path, seed: Optional[int]) -> ExperimentConfig:
    config = load_experiment_config(config_path)
    return config.with_seed(seed) if seed is not None else config


def cmd_train(config: ExperimentConfig, output_dir: Path, plots: bool) -> int:
    run = run_training(config)
    write_history({config.training.loss.value: run.history}, output_dir / "history.tsv")
    write_json(
        {
            "final_epoch": run.history.final.to_row(),
            "evaluation": run.report[FUSED_SOURCE].to_dict(),
        },
        output_dir / "train_summary.json",
    )
    if plots:
        write_figure(training_curves_figure({config.training.loss.value: run.history}), output_dir / "training_curves.html")
    return EXIT_OK


def cmd_ablation(config: ExperimentConfig, output_dir: Path, plots: bool) -> int:
    dataset = generate_synthetic(config.data)
    run = run_ablation(dataset, config.training, config.evaluation)
    write_json(run.report.to_dict(), output_dir / "ablation.json")
    write_history({config.training.loss.value: run.history}, output_dir / "history.tsv")
    if plots:
        curves = {name: block.curve for name, block in run.report.blocks.items() if block.curve is not None}
        thresholds = {name: block.threshold for name, block in run.report.blocks.items()}
        write_figure(pr_curves_figure(curves, thresholds), output_dir / "ablation_pr_curves.html")
    return EXIT_OK


def cmd_losses(config: ExperimentConfig, output_dir: Path, plots: bool) -> int:
    dataset = generate_synthetic(config.data)
    comparison = run_loss_comparison(dataset, config.training, config.evaluation)
    histories = {kind.value: outcome.history for kind, outcome in comparison.outcomes.items()}
    write_json(comparison.to_dict(), output_dir / "loss_comparison.json")
    write_history(histories, output_dir / "loss_histories.tsv")
    if plots:
        write_figure(training_curves_figure(histories, title="Loss comparison"), output_dir / "loss_curves.html")
    return EXIT_OK


def cmd_noise(config: ExperimentConfig, output_dir: Path, plots: bool) -> int:
    dataset = generate_synthetic(config.data)
    result = run_noise_sweep(dataset, config.training, config.noise, config.evaluation)
    write_json(result.to_dict(), output_dir / "noise_sweep.json")
    write_tsv(pd.DataFrame([level.to_dict() for level in result.levels]), output_dir / "noise_sweep.tsv")
    if plots:
        write_figure(training_curves_figure({"clean": result.history}), output_dir / "noise_training_curves.html")
    return EXIT_OK


def cmd_fusion_methods(config: ExperimentConfig, output_dir: Path, plots: bool) -> int:
    dataset = generate_synthetic(config.data)
    comparison = run_fusion_comparison(dataset, config.training, config.evaluation)
    write_json(comparison.to_dict(), output_dir / "fusion_methods.json")
    write_history(comparison.histories, output_dir / "fusion_histories.tsv")
    if plots:
        write_figure(
            training_curves_figure(comparison.histories, title="Fusion methods"),
            output_dir / "fusion_curves.html",
        )
    return EXIT_OK


EXPERIMENTS = {
    "train": (cmd_train, "Treina a combinação de crenças no benchmark sintético"),
    "ablation": (cmd_ablation, "Compara vídeo, áudio e fused"),
    "losses": (cmd_losses, "Compara as variantes de loss"),
    "noise": (cmd_noise, "Injeta ruído no áudio de avaliação"),
    "fusion-methods": (cmd_fusion_methods, "Compara fusão precoce, tardia e combinação de crenças"),
}


def _emit_lines(lines: List[str], output_path: Optional[Path]) -> None:
    if output_path:
        write_lines(lines, output_path)
    else:
        for line in lines:
            sys.stdout.write(line + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="trusted-fusion",
        description="Fusão confiável de opiniões multimodais e avaliação com incerteza",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
            Exemplos:
                # Fundir logits por modalidade
                trusted-fusion fuse --input records.jsonl --output fused.jsonl

                # Avaliar com limiar automático e exportar a curva P-R
                trusted-fusion eval --input records.jsonl --threshold auto --curve curve.tsv

                # Ablação no benchmark sintético com outra semente
                trusted-fusion ablation --config configs/default.yaml --output results/ --seed 7
        """
    )
    parser.add_argument("--log-level", default=None, help="Nível de log (padrão: config.yaml)")
    parser.add_argument("--log-format", choices=["json", "text"], default=None, help="Formato dos logs")
    parser.add_argument("--app-config", type=Path, default=None, help="Arquivo de configuração da aplicação")

    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    fuse = subparsers.add_parser("fuse", help="Funde as opiniões de cada registro")
    fuse.add_argument("--input", type=Path, required=True, help="Registros JSON Lines")
    fuse.add_argument("--output", type=Path, default=None, help="Saída JSON Lines (padrão: stdout)")

    evaluate = subparsers.add_parser("eval", help="Avaliação confiável de registros rotulados")
    evaluate.add_argument("--input", type=Path, required=True, help="Registros JSON Lines rotulados")
    evaluate.add_argument("--output", type=Path, default=None, help="Relatório JSON (padrão: stdout)")
    evaluate.add_argument("--threshold", type=_threshold, default="auto", help="Limiar de incerteza ou 'auto'")
    evaluate.add_argument("--curve", type=Path, default=None, help="Exportar curvas P-R (TSV)")
    evaluate.add_argument("--plots", action="store_true", help="Gerar figuras HTML ao lado do relatório")

    for name, (_, description) in EXPERIMENTS.items():
        experiment = subparsers.add_parser(name, help=description)
        experiment.add_argument("--config", type=Path, required=True, help="Arquivo de experimento YAML")
        experiment.add_argument("--output", type=Path, default=Path("results"), help="Diretório de saída")
        experiment.add_argument("--seed", type=int, default=None, help="Sobrescreve data.seed e training.seed")
        experiment.add_argument("--plots", action="store_true", help="Gerar figuras HTML")

    return parser


def run(args: argparse.Namespace) -> int:
    if args.command == "fuse":
        return cmd_fuse(args.input, args.output)
    if args.command == "eval":
        return cmd_eval(args.input, args.output, args.threshold, args.curve, args.plots)

    config = _load_config(args.config, args.seed)
    handler, _ = EXPERIMENTS[args.command]
    return handler(config, args.output, args.plots or config.output.plots)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = load_app_settings(args.app_config)
        try:
            configure_logging(
                level=args.log_level or settings.logging.level,
                fmt=args.log_format or settings.logging.format,
            )
        except ValueError as e:
            raise UsageError(str(e)) from None
        for name, (configured, effective) in numerics_mismatches(settings).items():
            logger.warning("[main] - numerics_setting_ignored", setting=name, configured=configured, effective=effective)
        return run(args)
    except (ConfigError, UsageError, FileNotFoundError) as e:
        print(f"Erro de uso: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as e:
        print(f"Erro de dados: {e}", file=sys.stderr)
        return EXIT_DATA
    except NumericalError as e:
        print(f"Falha numérica: {e}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
