"""
Parser de registros de predição (JSON Lines).

Cada linha não vazia é um objeto JSON autocontido:

    {"id": "s001", "label": 2, "modalities": {"video": [...], "audio": [...]}}

Todos os vetores de logits, dentro de um registro e entre registros, devem
ter o mesmo comprimento C.
"""

import json
import structlog
from pathlib import Path
from typing import Callable, List, Optional, TypeVar, Union

from pydantic import BaseModel, ValidationError

from src.exceptions import DataError, ParseError, SchemaError
from src.models.records import FusedRecord, PredictionRecord

logger = structlog.get_logger()

RecordT = TypeVar("RecordT", bound=BaseModel)


def _describe(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"]) or "record"
    return f"{location}: {first['msg']}"


class RecordParser:
    """
    Parser de arquivos de registros de predição.

    Converte linhas JSON em PredictionRecord validados, anexando o número
    da linha a toda falha de validação.
    """

    def __init__(self, strict: bool = True):
        """
        Inicializa o parser.

        Args:
            strict: Se True, lança exceção na primeira linha inválida.
                   Se False, registra o erro e continua.
        """
        self.strict = strict
        self.errors: List[DataError] = []
        self.num_classes: Optional[int] = None

    def parse_file(self, filepath: Union[str, Path]) -> List[PredictionRecord]:
        """
        Parseia arquivo completo.

        Args:
            filepath: Caminho do arquivo JSON Lines

        Returns:
            Registros na ordem do arquivo

        Raises:
            FileNotFoundError: Se arquivo não existe
            ParseError: Linha malformada (strict=True)
            SchemaError: C inconsistente ou rótulo fora de [0, C) (strict=True)
        """
        filepath = Path(filepath)
        if not filepath.exists():
            raise FileNotFoundError(f"File not found: {filepath}")

        self.errors.clear()
        self.num_classes = None
        records = []

        logger.info("[RecordParser.parse_file] - parsing_records", file=str(filepath))

        with open(filepath, "r", encoding="utf-8") as f:
            for line_num, raw_line in enumerate(f, start=1):
                if not raw_line.strip():
                    continue
                try:
                    records.append(self.parse_line(raw_line, line_num))
                except (ParseError, SchemaError) as e:
                    if self.strict:
                        raise
                    logger.warning("[RecordParser.parse_file] - invalid_record", line=line_num, reason=str(e))
                    self.errors.append(e)

        logger.info(
            "[RecordParser.parse_file] - parsing_complete",
            records=len(records),
            errors=len(self.errors),
            num_classes=self.num_classes,
        )
        return records

    def parse_line(self, raw_line: str, line_num: int) -> PredictionRecord:
        """
        Parseia e valida uma linha.

        Raises:
            ParseError: JSON inválido ou campos fora do esquema
            SchemaError: Vetores com comprimentos diferentes ou rótulo ≥ C
        """
        record = _validate_line(raw_line, line_num, PredictionRecord.model_validate_json)

        lengths = {name: len(logits) for name, logits in record.modalities.items()}
        if len(set(lengths.values())) > 1:
            raise SchemaError(line_num, f"Logit vectors have different lengths: {lengths}")

        num_classes = record.num_classes
        if self.num_classes is None:
            self.num_classes = num_classes
        elif num_classes != self.num_classes:
            raise SchemaError(
                line_num,
                f"Record has {num_classes} classes, previous records have {self.num_classes}",
            )

        if record.label is not None and record.label >= num_classes:
            raise SchemaError(line_num, f"Label {record.label} out of range for {num_classes} classes")

        return record


def _validate_line(raw_line: str, line_num: int, validate: Callable[[str], RecordT]) -> RecordT:
    try:
        return validate(raw_line)
    except ValidationError as e:
        if any(err["type"] == "json_invalid" for err in e.errors()):
            reason = "Malformed JSON"
        else:
            reason = _describe(e)
        raise ParseError(line_num=line_num, raw_line=raw_line.rstrip("\n"), reason=reason) from None


def read_records(path: Union[str, Path]) -> List[PredictionRecord]:
    """Lê um arquivo de registros (modo estrito)."""
    return RecordParser(strict=True).parse_file(path)


def read_fused_records(path: Union[str, Path]) -> List[FusedRecord]:
    """
    Lê a saída do fuse.

    Raises:
        ParseError: Linha malformada
    """
    records = []
    with open(path, "r", encoding="utf-8") as f:
        for line_num, raw_line in enumerate(f, start=1):
            if raw_line.strip():
                records.append(_validate_line(raw_line, line_num, FusedRecord.model_validate_json))
    return records


def dumps_record(payload: dict) -> str:
    """Serializa um objeto em uma linha JSON com chaves ordenadas."""
    return json.dumps(payload, sort_keys=True, ensure_ascii=False)
