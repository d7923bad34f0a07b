"""
Hierarquia de erros do trusted-fusion.

Os erros são agrupados por categoria para que a CLI possa mapear cada
falha para um código de saída:

- ConfigError      → 1 (erro de uso / configuração)
- DataError        → 2 (dados inválidos)
- NumericalError   → 3 (falha numérica)
"""

from typing import Optional


class TrustedFusionError(Exception):
    """Erro base do pacote."""
    pass


class ConfigError(TrustedFusionError):
    """Arquivo de configuração inválido ou incompleto."""

    def __init__(self, field_path: str, reason: str):
        self.field_path = field_path
        self.reason = reason
        super().__init__(f"Config field '{field_path}': {reason}")


# Erros de dados
class DataError(TrustedFusionError):
    """Entrada de dados inválida."""
    pass


class InvalidInput(DataError):
    """Entrada fora do domínio da operação (vazia, não finita, etc.)."""
    pass


class InvalidEvidence(DataError):
    """Evidência com componente abaixo de 1."""
    pass


class InvalidOpinion(DataError):
    """Opinião com componente negativo ou fora de [0, 1]."""
    pass


class NotNormalized(DataError):
    """Soma de crenças + incerteza se afasta de 1 além da tolerância."""

    def __init__(self, total: float, tolerance: float):
        self.total = total
        self.tolerance = tolerance
        super().__init__(
            f"Opinion components sum to {total!r}, expected 1 within {tolerance:g}"
        )


class DimensionMismatch(DataError):
    """Número de classes diferente entre operandos."""

    def __init__(self, expected: int, got: int):
        self.expected = expected
        self.got = got
        super().__init__(f"Class count mismatch: expected {expected}, got {got}")


class InvalidLabel(DataError):
    """Rótulo fora do intervalo [0, C)."""
    pass


class NoCorrectPredictions(DataError):
    """Curva P-R sem nenhuma predição correta (recall indefinido)."""
    pass


class NoValidThreshold(DataError):
    """Nenhum ponto da curva tem precisão confiável definida."""
    pass


class MissingLabels(DataError):
    """Registros sem rótulo em uma avaliação."""

    def __init__(self, record_ids: list[str]):
        self.record_ids = record_ids
        preview = ", ".join(record_ids[:5])
        super().__init__(f"{len(record_ids)} record(s) without label: {preview}")


class SchemaError(DataError):
    """Registro estruturalmente válido mas inconsistente com o esquema."""

    def __init__(self, line_num: int, reason: str):
        self.line_num = line_num
        self.reason = reason
        super().__init__(f"Line {line_num}: {reason}")


class ParseError(DataError):
    """Erro ao parsear linha de registro."""

    def __init__(self, line_num: int, raw_line: str, reason: str):
        self.line_num = line_num
        self.raw_line = raw_line
        self.reason = reason
        super().__init__(f"Line {line_num}: {reason}")


# Erros numéricos
class NumericalError(TrustedFusionError):
    """Falha numérica irrecuperável."""
    pass


class TotalConflict(NumericalError):
    """Opiniões certas e contraditórias: 1 - k abaixo de ε_conflict."""

    def __init__(self, conflict: float, index: Optional[int] = None, record_id: Optional[str] = None):
        self.conflict = conflict
        self.index = index
        self.record_id = record_id
        if record_id is not None:
            where = f" in record '{record_id}'"
        elif index is not None:
            where = f" at sample {index}"
        else:
            where = ""
        super().__init__(f"Total conflict{where}: k = {conflict!r}")


class TrainingDiverged(NumericalError):
    """Loss não finita durante o treinamento."""

    def __init__(self, epoch: int, loss: float):
        self.epoch = epoch
        self.loss = loss
        super().__init__(f"Training diverged at epoch {epoch}: loss = {loss!r}")
