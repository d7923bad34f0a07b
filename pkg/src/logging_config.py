"""
Configuração do structlog.

Os logs vão para stderr; stdout e os arquivos de saída ficam reservados aos
resultados.
"""

import logging
import sys

import structlog

LOG_FORMATS = ("json", "text")


def configure_logging(level: str = "INFO", fmt: str = "json") -> None:
    """
    Configura o structlog para o processo.

    Args:
        level: DEBUG, INFO, WARNING, ERROR ou CRITICAL
        fmt: 'json' (JSONRenderer) ou 'text' (ConsoleRenderer)
    """
    level_value = logging.getLevelNamesMapping().get(level.upper())
    if level_value is None:
        raise ValueError(f"Unknown log level: {level!r}")
    if fmt not in LOG_FORMATS:
        raise ValueError(f"Unknown log format: {fmt!r}")

    renderer = (
        structlog.processors.JSONRenderer(sort_keys=True)
        if fmt == "json"
        else structlog.dev.ConsoleRenderer(colors=False)
    )

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level_value),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
