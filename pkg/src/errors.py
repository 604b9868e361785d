"""Exception hierarchy shared by the library and the command-line surface."""

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_NOT_CONVERGED = 4


class ChromoEnvError(Exception):
    """Base class for every error raised by this package."""

    exit_code = EXIT_NUMERIC


class ConfigError(ChromoEnvError, ValueError):
    """Invalid or unknown configuration key/value."""

    exit_code = EXIT_CONFIG

    def __init__(self, key, message):
        self.key = key
        super().__init__(f"config key '{key}': {message}")


class InvalidParameterError(ChromoEnvError, ValueError):
    """A physical parameter violates the invariants of its type."""

    exit_code = EXIT_CONFIG


class IncompatibleUnitsError(InvalidParameterError):
    def __init__(self, source, target):
        self.source = source
        self.target = target
        super().__init__(f"cannot convert '{source}' to '{target}': incompatible dimensions")


class DatasetFormatError(ChromoEnvError, ValueError):
    """Malformed row in a bundled or user-supplied data file."""

    exit_code = EXIT_CONFIG

    def __init__(self, path, line, field, message):
        self.path = path
        self.line = line
        self.field = field
        super().__init__(f"{path}: line {line}, field '{field}': {message}")


class NumericError(ChromoEnvError, ArithmeticError):
    exit_code = EXIT_NUMERIC


class SingularConfigurationError(NumericError):
    """Degenerate boundary-value problem (vanishing denominator or singular system)."""

    def __init__(self, message, condition=None, omega=None):
        self.condition = condition
        self.omega = omega
        details = []
        if omega is not None:
            details.append(f"omega={omega:g} rad/ps")
        if condition is not None:
            details.append(f"condition estimate={condition:.3e}")
        suffix = f" ({', '.join(details)})" if details else ""
        super().__init__(f"{message}{suffix}")


class DivergentIntegralError(NumericError):
    """The integrand tail does not decay fast enough for the integral to exist."""


class QuadratureError(NumericError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message, t=None):
        self.t = t
        suffix = f" at t={t:g} ps" if t is not None else ""
        super().__init__(f"{message}{suffix}")


class NoCrossoverError(NumericError):
    """Two spectral components never contribute equally."""


class FitNotConvergedError(ChromoEnvError):
    """The best-effort fit was written but is flagged unconverged."""

    exit_code = EXIT_NOT_CONVERGED
