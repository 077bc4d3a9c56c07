"""Pluggable dense linear-algebra backends."""

from src.backend.base import (
    JITTER_LADDER,
    BackendKind,
    BaseBackend,
    CorrelationFactor,
    LedgerCounts,
)
from src.backend.factory import create_backend
from src.backend.parallel import ParallelBackend
from src.backend.reference import ReferenceBackend

__all__ = [
    "JITTER_LADDER",
    "BackendKind",
    "BaseBackend",
    "CorrelationFactor",
    "LedgerCounts",
    "ParallelBackend",
    "ReferenceBackend",
    "create_backend",
]
