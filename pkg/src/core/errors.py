"""Exception hierarchy shared by all modules."""


class GpEmulatorError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatchError(GpEmulatorError, ValueError):
    """Array shapes that must agree do not."""


class NonFiniteEntryError(GpEmulatorError, ValueError):
    """An input contains NaN or infinity."""


class OutOfUnitCubeError(GpEmulatorError, ValueError):
    """A coordinate lies outside [0, 1] beyond tolerance."""


class HyperparameterError(GpEmulatorError, ValueError):
    """Correlation hyperparameters outside their valid ranges."""


class NonFiniteCorrelationError(GpEmulatorError, ArithmeticError):
    """Correlation evaluation produced NaN or infinity."""


class NotPositiveDefiniteError(GpEmulatorError, ArithmeticError):
    """Cholesky factorization failed at every jitter level."""


class DegenerateFactorError(GpEmulatorError, ArithmeticError):
    """A factor is numerically broken (e.g. 1'R^-1 1 <= 0)."""


class FitAbortedError(GpEmulatorError, RuntimeError):
    """No candidate produced a finite objective value."""


class OptimizerError(GpEmulatorError, ValueError):
    """Invalid optimizer bounds or budget."""


class BackendUnavailableError(GpEmulatorError, RuntimeError):
    """Requested backend cannot run in this environment."""


class ConfigError(GpEmulatorError, ValueError):
    """Configuration is inconsistent or cannot be loaded."""
