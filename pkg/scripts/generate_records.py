#!/usr/bin/env python3
"""
Script para gerar registros de predição a partir do benchmark sintético.

Treina as cabeças de vídeo e áudio e grava, para cada amostra do split de
avaliação, os logits por modalidade em JSON Lines (entrada de `fuse` e `eval`).

Uso:
    python scripts/generate_records.py \
        --config configs/default.yaml \
        --output data/records.jsonl
"""
import sys
import argparse
from pathlib import Path

# Adiciona src ao path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config import load_experiment_config
from src.exporters.tables import write_lines
from src.parsers.record_parser import dumps_record
from src.training.synthetic import MODALITIES, generate_synthetic, split_dataset
from src.training.trainer import train


def main():
    parser = argparse.ArgumentParser(
        description="Gera registros de logits por modalidade",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
            Exemplos:
                # Registros rotulados do split de avaliação
                python scripts/generate_records.py --config configs/default.yaml --output data/records.jsonl

                # Sem rótulos (apenas para fuse) e com outra semente
                python scripts/generate_records.py --config configs/default.yaml --output data/unlabeled.jsonl --unlabeled --seed 7
        """
    )

    parser.add_argument(
        "--config",
        required=True,
        help="Arquivo de experimento YAML"
    )
    parser.add_argument(
        "--output",
        required=True,
        help="Arquivo JSON Lines de saída"
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        help="Sobrescreve data.seed e training.seed"
    )
    parser.add_argument(
        "--unlabeled",
        action='store_true',
        help="Omitir o campo label dos registros"
    )

    args = parser.parse_args()

    config_path = Path(args.config)
    if not config_path.exists():
        print(f"Erro: Arquivo não encontrado: {config_path}")
        return 1

    config = load_experiment_config(config_path)
    if args.seed is not None:
        config = config.with_seed(args.seed)

    print("=" * 70)
    print("GERAÇÃO DE REGISTROS")
    print("=" * 70)
    print()

    dataset = generate_synthetic(config.data)
    train_set, eval_set = split_dataset(dataset, config.evaluation.eval_fraction, config.training.seed)
    print(f"- Amostras de treino: {len(train_set)}")
    print(f"- Amostras de avaliação: {len(eval_set)}")

    print("Treinando cabeças por modalidade...")
    model, history = train(train_set, config.training)
    print(f"- Loss final: {history.final.overall_loss:.4f}")
    print(f"- Acurácia de treino: {history.final.train_accuracy:.1%}")
    print()

    logits = [head.logits(features) for head, features in zip(model.heads, eval_set.features)]
    lines = []
    for i in range(len(eval_set)):
        record = {
            "id": f"s{i:05d}",
            "modalities": {name: branch[i].tolist() for name, branch in zip(MODALITIES, logits)},
        }
        if not args.unlabeled:
            record["label"] = int(eval_set.labels[i])
        lines.append(dumps_record(record))

    output_path = write_lines(lines, args.output)

    print("=" * 70)
    print("GERAÇÃO CONCLUÍDA!")
    print("=" * 70)
    print()
    print(f"Arquivo: {output_path}")
    print(f"Registros: {len(lines)}")
    print()

    return 0


if __name__ == "__main__":
    sys.exit(main())
