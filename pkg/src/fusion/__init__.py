"""
Módulo de fusão: combinação de opiniões pela regra de Dempster-Shafer.
"""

from .combine import (
    CONFLICT_EPSILON,
    FusionTrace,
    combine_batch,
    combine_many,
    combine_pair,
    combine_vjp,
    conflict,
    conflict_batch,
    fuse_batch,
    fuse_vjp,
)

__all__ = [
    "CONFLICT_EPSILON",
    "FusionTrace",
    "combine_batch",
    "combine_many",
    "combine_pair",
    "combine_vjp",
    "conflict",
    "conflict_batch",
    "fuse_batch",
    "fuse_vjp",
]
