"""
Testes de integração da linha de comando.

Executa main() de ponta a ponta sobre arquivos temporários.
"""

import json

import numpy as np
import pytest

from src.cli import EXIT_DATA, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, main
from src.evidence.core import opinion_from_logits
from src.parsers import read_fused_records

from .helpers import logits_for_opinion

pytestmark = pytest.mark.integration


def fused_lines(path):
    return [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]


class TestFuseCommand:
    """Testes para o comando fuse."""

    def test_single_modality(self, write_records, tmp_path):
        """Registro com uma modalidade → fused igual à opinião da modalidade."""
        records = write_records([{"id": "s1", "modalities": {"video": [2.0, -1.0, 0.5]}}])
        output = tmp_path / "fused.jsonl"

        assert main(["fuse", "--input", str(records), "--output", str(output)]) == EXIT_OK

        (line,) = fused_lines(output)
        assert line["fused"] == line["modalities"]["video"]
        assert line["fused"]["predicted_class"] == 0
        assert line["error"] is None

    def test_worked_example(self, write_records, tmp_path):
        """((0.6, 0.2), 0.2) ⊕ ((0.4, 0.4), 0.2) → (0.647059, 0.294118), u 0.058824."""
        records = write_records([{
            "id": "example",
            "modalities": {
                "video": logits_for_opinion((0.6, 0.2), 0.2),
                "audio": logits_for_opinion((0.4, 0.4), 0.2),
            },
        }])
        output = tmp_path / "fused.jsonl"

        assert main(["fuse", "--input", str(records), "--output", str(output)]) == EXIT_OK

        fused = fused_lines(output)[0]["fused"]
        np.testing.assert_allclose(fused["beliefs"], [0.647059, 0.294118], atol=1e-6)
        assert fused["uncertainty"] == pytest.approx(0.058824, abs=1e-6)
        assert fused["predicted_class"] == 0

    def test_keeps_input_order(self, write_records, tmp_path):
        """Saída na ordem da entrada."""
        ids = ["z", "a", "m", "b"]
        records = write_records([
            {"id": record_id, "modalities": {"v": [0.1 * i, 0.0], "a": [0.0, 0.2 * i]}}
            for i, record_id in enumerate(ids)
        ])
        output = tmp_path / "fused.jsonl"

        main(["fuse", "--input", str(records), "--output", str(output)])

        assert [line["id"] for line in fused_lines(output)] == ids

    def test_round_trip(self, write_records, tmp_path):
        """Saída relida com desvio ≤ 1e-12 em relação às opiniões recalculadas."""
        rng = np.random.default_rng(0)
        raw = [
            {"id": f"s{i}", "label": int(i % 3), "modalities": {
                "video": rng.uniform(-10, 10, 3).tolist(),
                "audio": rng.uniform(-10, 10, 3).tolist(),
            }}
            for i in range(50)
        ]
        output = tmp_path / "fused.jsonl"

        main(["fuse", "--input", str(write_records(raw)), "--output", str(output)])

        for source, fused in zip(raw, read_fused_records(output)):
            assert fused.id == source["id"]
            assert fused.label == source["label"]
            expected = opinion_from_logits(source["modalities"]["video"])
            np.testing.assert_allclose(fused.modalities["video"].beliefs, expected.beliefs, rtol=0, atol=1e-12)
            assert abs(fused.modalities["video"].uncertainty - expected.uncertainty) <= 1e-12
            assert abs(sum(fused.fused.beliefs) + fused.fused.uncertainty - 1.0) <= 1e-12

    def test_stdout(self, write_records, capsys):
        """Sem --output a saída vai para stdout."""
        records = write_records([{"id": "s1", "modalities": {"v": [1.0, 0.0]}}])

        assert main(["fuse", "--input", str(records)]) == EXIT_OK

        out = capsys.readouterr().out
        assert json.loads(out.splitlines()[0])["id"] == "s1"

    def test_byte_identical_reruns(self, write_records, tmp_path):
        """Mesma entrada → mesmos bytes."""
        records = write_records([
            {"id": "s1", "modalities": {"v": [1.5, -0.25, 3.0], "a": [0.0, 2.0, -1.0]}},
            {"id": "s2", "modalities": {"v": [-4.0, 0.5, 0.5], "a": [7.0, 0.0, 0.1]}},
        ])
        first, second = tmp_path / "a.jsonl", tmp_path / "b.jsonl"

        main(["fuse", "--input", str(records), "--output", str(first)])
        main(["fuse", "--input", str(records), "--output", str(second)])

        assert first.read_bytes() == second.read_bytes()

    def test_malformed_input(self, write_records, tmp_path):
        """Linha inválida → código 2."""
        path = tmp_path / "broken.jsonl"
        path.write_text('{"id": "s1", "modalities": {"v": [1.0, 2.0]}}\n{oops\n', encoding="utf-8")

        assert main(["fuse", "--input", str(path)]) == EXIT_DATA

    def test_logits_near_float_limit(self, write_records, tmp_path):
        """Logits finitos da ordem de 1e308 → opiniões finitas e normalizadas."""
        records = write_records([{
            "id": "huge",
            "modalities": {"video": [1e308, 1e308], "audio": [1e308, -1e308]},
        }])
        output = tmp_path / "fused.jsonl"

        assert main(["fuse", "--input", str(records), "--output", str(output)]) == EXIT_OK

        (line,) = fused_lines(output)
        video = line["modalities"]["video"]
        np.testing.assert_allclose(video["beliefs"], [0.5, 0.5])
        assert 0.0 < video["uncertainty"] < 1e-300
        assert line["fused"]["predicted_class"] == 0
        assert sum(line["fused"]["beliefs"]) + line["fused"]["uncertainty"] == pytest.approx(1.0, abs=1e-12)

    def test_total_conflict_is_recorded(self, write_records, tmp_path):
        """Modalidades certas e opostas → campo error no registro, código 0."""
        records = write_records([
            {"id": "ok", "modalities": {"video": [2.0, 0.0], "audio": [1.0, 0.0]}},
            {"id": "clash", "modalities": {"video": [1e14, -50.0], "audio": [-50.0, 1e14]}},
        ])
        output = tmp_path / "fused.jsonl"

        assert main(["fuse", "--input", str(records), "--output", str(output)]) == EXIT_OK

        ok, clash = fused_lines(output)
        assert ok["error"] is None
        assert clash["fused"] is None
        assert "Total conflict" in clash["error"]


class TestEvalCommand:
    """Testes para o comando eval."""

    def test_seven_predictions(self, seven_records, tmp_path):
        """Limiar 0.5 → TP 0.75, TR 0.6, Trusted F1 2/3."""
        output = tmp_path / "report.json"

        code = main(["eval", "--input", str(seven_records), "--threshold", "0.5", "--output", str(output)])

        assert code == EXIT_OK
        report = json.loads(output.read_text(encoding="utf-8"))
        assert report["threshold"] == 0.5
        model = report["sources"][0]
        assert model["source"] == "model"
        assert model["confusion"] == {"ht": 3, "lt": 2, "hf": 1, "lf": 1, "n": 7}
        assert model["trusted_precision"] == 0.75
        assert model["trusted_recall"] == 0.6
        assert model["trusted_f1"] == pytest.approx(0.666667, abs=1e-6)
        assert [block["source"] for block in report["sources"]] == ["model", "fused"]

    def test_auto_equals_explicit(self, seven_records, tmp_path):
        """'auto' reproduz o relatório do limiar escolhido passado explicitamente."""
        auto_path, fixed_path = tmp_path / "auto.json", tmp_path / "fixed.json"

        main(["eval", "--input", str(seven_records), "--output", str(auto_path)])
        auto = json.loads(auto_path.read_text(encoding="utf-8"))["sources"][0]
        main([
            "eval", "--input", str(seven_records),
            "--threshold", repr(auto["threshold"]), "--output", str(fixed_path),
        ])
        fixed = json.loads(fixed_path.read_text(encoding="utf-8"))["sources"][0]

        assert auto["threshold"] == pytest.approx(0.65)
        for key in ("confusion", "trusted_precision", "trusted_recall", "trusted_f1", "trusted_accuracy"):
            assert auto[key] == fixed[key]

    def test_all_correct_confident(self, write_records, tmp_path):
        """Tudo correto e muito confiante → todas as métricas 1."""
        records = write_records([
            {"id": f"s{i}", "label": i % 2, "modalities": {"v": [40.0, -40.0] if i % 2 == 0 else [-40.0, 40.0]}}
            for i in range(6)
        ])
        output = tmp_path / "report.json"

        assert main(["eval", "--input", str(records), "--output", str(output)]) == EXIT_OK

        for block in json.loads(output.read_text(encoding="utf-8"))["sources"]:
            for key in ("accuracy", "macro_f1", "weighted_f1", "trusted_accuracy", "trusted_precision", "trusted_f1"):
                assert block[key] == 1.0
            assert block["confusion"]["ht"] == 6

    def test_curve_export(self, seven_records, tmp_path):
        """--curve grava um TSV com cabeçalho e a coluna source."""
        curve = tmp_path / "curve.tsv"

        main(["eval", "--input", str(seven_records), "--curve", str(curve), "--output", str(tmp_path / "r.json")])

        lines = curve.read_text(encoding="utf-8").splitlines()
        assert lines[0].startswith("source\tthreshold\ttrusted_recall\ttrusted_precision")
        assert len(lines) == 1 + 2 * 8

    def test_plots(self, seven_records, tmp_path):
        """--plots grava as figuras ao lado do relatório."""
        output = tmp_path / "report.json"

        assert main(["eval", "--input", str(seven_records), "--output", str(output), "--plots"]) == EXIT_OK

        assert (tmp_path / "report_pr_curves.html").exists()
        assert (tmp_path / "report_confusion.html").exists()

    def test_plots_need_output(self, seven_records):
        """--plots sem --output → erro de uso."""
        assert main(["eval", "--input", str(seven_records), "--plots"]) == EXIT_USAGE

    def test_missing_labels(self, write_records, capsys):
        """Registro sem rótulo → código 2."""
        records = write_records([
            {"id": "s1", "label": 0, "modalities": {"v": [1.0, 0.0]}},
            {"id": "s2", "modalities": {"v": [0.0, 1.0]}},
        ])

        assert main(["eval", "--input", str(records)]) == EXIT_DATA
        assert "s2" in capsys.readouterr().err

    def test_total_conflict_names_record(self, write_records, capsys):
        """Conflito total em um registro → código 3 com o id do registro."""
        records = write_records([
            {"id": "ok", "label": 0, "modalities": {"video": [2.0, 0.0], "audio": [1.0, 0.0]}},
            {"id": "clash", "label": 0, "modalities": {"video": [1e14, -50.0], "audio": [-50.0, 1e14]}},
        ])

        assert main(["eval", "--input", str(records)]) == EXIT_NUMERICAL
        assert "'clash'" in capsys.readouterr().err

    def test_missing_input_file(self, tmp_path):
        """Arquivo inexistente → código 1."""
        assert main(["eval", "--input", str(tmp_path / "absent.jsonl")]) == EXIT_USAGE

    def test_byte_identical_reports(self, seven_records, tmp_path):
        """Mesma entrada e flags → mesmo relatório."""
        first, second = tmp_path / "a.json", tmp_path / "b.json"

        main(["eval", "--input", str(seven_records), "--output", str(first)])
        main(["eval", "--input", str(seven_records), "--output", str(second)])

        assert first.read_bytes() == second.read_bytes()


class TestUsageErrors:
    """Testes para argumentos inválidos."""

    def test_missing_subcommand(self):
        """Sem comando → saída 1."""
        with pytest.raises(SystemExit) as exc_info:
            main([])

        assert exc_info.value.code == EXIT_USAGE

    def test_threshold_out_of_range(self, seven_records):
        """--threshold 2 → saída 1."""
        with pytest.raises(SystemExit) as exc_info:
            main(["eval", "--input", str(seven_records), "--threshold", "2"])

        assert exc_info.value.code == EXIT_USAGE

    def test_unknown_log_level(self, seven_records):
        """Nível de log desconhecido → código 1."""
        assert main(["--log-level", "LOUD", "eval", "--input", str(seven_records)]) == EXIT_USAGE

    def test_missing_config_field(self, experiment_config, tmp_path, capsys):
        """Campo obrigatório ausente → código 1 nomeando o campo."""
        config = experiment_config(remove=[("data", "classes")])

        code = main(["train", "--config", str(config), "--output", str(tmp_path / "out")])

        assert code == EXIT_USAGE
        assert "data.classes" in capsys.readouterr().err


class TestExperimentCommands:
    """Testes para os comandos de experimento com configurações pequenas."""

    def test_train(self, experiment_config, tmp_path):
        """train grava o histórico e o resumo."""
        output = tmp_path / "out"

        assert main(["train", "--config", str(experiment_config()), "--output", str(output)]) == EXIT_OK

        history = (output / "history.tsv").read_text(encoding="utf-8").splitlines()
        assert history[0].startswith("run\tepoch\toverall_loss")
        assert len(history) == 1 + 10
        summary = json.loads((output / "train_summary.json").read_text(encoding="utf-8"))
        assert summary["evaluation"]["source"] == "fused"
        assert summary["final_epoch"]["epoch"] == 9

    def test_train_is_byte_identical(self, experiment_config, tmp_path):
        """Mesma configuração → mesmos bytes."""
        config = experiment_config()
        first, second = tmp_path / "a", tmp_path / "b"

        main(["train", "--config", str(config), "--output", str(first)])
        main(["train", "--config", str(config), "--output", str(second)])

        for name in ("history.tsv", "train_summary.json"):
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_seed_override(self, experiment_config, tmp_path):
        """--seed muda os dados e o treino."""
        config = experiment_config()

        main(["train", "--config", str(config), "--output", str(tmp_path / "a")])
        main(["train", "--config", str(config), "--output", str(tmp_path / "b"), "--seed", "7"])

        assert (tmp_path / "a" / "history.tsv").read_bytes() != (tmp_path / "b" / "history.tsv").read_bytes()

    def test_ablation(self, experiment_config, tmp_path):
        """ablation grava um bloco por fonte, com células somando n."""
        output = tmp_path / "out"

        assert main(["ablation", "--config", str(experiment_config()), "--output", str(output), "--plots"]) == EXIT_OK

        report = json.loads((output / "ablation.json").read_text(encoding="utf-8"))
        assert [block["source"] for block in report["sources"]] == ["video", "audio", "fused"]
        for block in report["sources"]:
            assert block["confusion"]["n"] == block["n"] == 12
        assert (output / "ablation_pr_curves.html").exists()

    def test_losses(self, experiment_config, tmp_path):
        """losses grava uma variante por loss."""
        output = tmp_path / "out"

        assert main(["losses", "--config", str(experiment_config()), "--output", str(output)]) == EXIT_OK

        comparison = json.loads((output / "loss_comparison.json").read_text(encoding="utf-8"))
        assert [v["loss"] for v in comparison["variants"]] == [
            "trusted_ce", "ce", "add_trusted", "tan_mul_trusted", "tan_add_trusted", "exp_mul_trusted",
        ]
        runs = (output / "loss_histories.tsv").read_text(encoding="utf-8").splitlines()
        assert len(runs) == 1 + 6 * 10

    def test_noise(self, experiment_config, tmp_path):
        """noise grava um nível por linha."""
        output = tmp_path / "out"

        assert main(["noise", "--config", str(experiment_config()), "--output", str(output)]) == EXIT_OK

        rows = (output / "noise_sweep.tsv").read_text(encoding="utf-8").splitlines()
        assert len(rows) == 1 + 5
        assert "uncertainty_spearman" in json.loads((output / "noise_sweep.json").read_text(encoding="utf-8"))

    def test_fusion_methods(self, experiment_config, tmp_path):
        """fusion-methods compara os três métodos."""
        output = tmp_path / "out"

        assert main(["fusion-methods", "--config", str(experiment_config()), "--output", str(output)]) == EXIT_OK

        report = json.loads((output / "fusion_methods.json").read_text(encoding="utf-8"))
        assert [m["method"] for m in report["methods"]] == ["combining_beliefs", "early_fusion", "late_fusion"]
