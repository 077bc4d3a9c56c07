"""Backend factory: build a backend instance from a configuration identifier."""

from src.backend.accelerated import AcceleratedBackend
from src.backend.base import BackendKind, BaseBackend
from src.backend.parallel import ParallelBackend
from src.backend.reference import ReferenceBackend
from src.core.types import Precision

_BACKENDS: dict[BackendKind, type[BaseBackend]] = {
    BackendKind.REFERENCE: ReferenceBackend,
    BackendKind.PARALLEL: ParallelBackend,
    BackendKind.ACCELERATED: AcceleratedBackend,
}


def create_backend(
    kind: str | BackendKind,
    precision: Precision = "double",
    workers: int | None = None,
) -> BaseBackend:
    """
    Create a backend from its identifier.

    Args:
        kind: "reference", "parallel" or "accelerated"
        precision: "single" or "double"
        workers: optional thread count override

    Returns:
        Fresh backend instance with an empty ledger

    Raises:
        ValueError: unknown identifier
        BackendUnavailableError: accelerated backend without numba
    """
    try:
        backend_kind = BackendKind(kind)
    except ValueError:
        known = ", ".join(k.value for k in BackendKind)
        raise ValueError(f"Backend '{kind}' not found; known: {known}") from None
    return _BACKENDS[backend_kind](precision=precision, workers=workers)
