"""Exception types shared across the package."""


class PolarLambdaError(Exception):
    """Base class for all package errors."""


class DimensionError(PolarLambdaError, ValueError):
    pass


class TruncationError(PolarLambdaError):
    """The Fock-space cutoff is too small for the requested accuracy."""


class DomainError(PolarLambdaError, ValueError):
    pass


class DegenerateDerivative(PolarLambdaError):
    """The finite-difference slope of the Rabi frequency vanishes."""


class StabilityError(PolarLambdaError):
    """Integrator step violates the dt * rho(H) bound."""


class NormDriftError(PolarLambdaError):
    pass


class ConvergenceError(PolarLambdaError):
    """An iterative or truncation-refinement procedure did not converge.

    ``diagnostics`` carries whatever the failing routine knew at the time
    (iteration count, residuals, subspace size, ...).
    """

    def __init__(self, message, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


class InvalidDensityMatrix(PolarLambdaError, ValueError):
    pass


class ConfigError(PolarLambdaError):
    """Bad command-line or config-file input.

    ``key`` and ``line`` identify the offending entry when known.
    """

    def __init__(self, message, key=None, line=None):
        where = []
        if key is not None:
            where.append(f"key '{key}'")
        if line is not None:
            where.append(f"line {line}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.key = key
        self.line = line
