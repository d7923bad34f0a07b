"""
Fixtures compartilhadas.
"""

import pytest
import structlog


@pytest.fixture(autouse=True)
def reset_structlog():
    """Desfaz configure_logging entre testes (o logger guarda o stderr capturado)."""
    yield
    structlog.reset_defaults()
