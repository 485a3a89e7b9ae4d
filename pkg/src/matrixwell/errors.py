"""Exception types shared across the package."""


class MatrixwellError(Exception):
    """Base class for all matrixwell errors."""


class ConfigError(MatrixwellError):
    """A run configuration is invalid; `field` names the offending entry."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class InvariantViolation(MatrixwellError):
    """A computed quantity broke a declared invariant (numerical fault)."""


class ProjectionError(MatrixwellError):
    """Mode projection captured too little of the requested wavefunction."""


class NonConvergentDerivative(MatrixwellError):
    """The operator-derivative limit diverged over the given step sequence."""
