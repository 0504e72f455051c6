"""Exceptions raised across specmode. Everything derives from SpecModeError so
callers (mostly the CLI) can catch one type and map it to an exit code."""


class SpecModeError(Exception):
    pass


class NormalizationError(SpecModeError, ValueError):
    """Amplitudes or weights that don't describe a single normalised photon."""


class HybridPhotonsError(SpecModeError, ValueError):
    """A photon list mixing Pure and Mixed sources."""


class TruncationError(SpecModeError):
    """A spectral decomposition left too much weight outside the basis."""

    def __init__(self, message, residual, required_size=None):
        super().__init__(message)
        self.residual = residual
        self.required_size = required_size


class QuadratureError(SpecModeError):
    pass


class UnitarityError(SpecModeError, ValueError):
    pass


class BudgetExceeded(SpecModeError):
    """The requested computation is larger than the configured budget."""

    def __init__(self, message, cost, budget):
        super().__init__(message)
        self.cost = cost
        self.budget = budget


class ConfigError(SpecModeError):
    pass


class HardnessThresholdWarning(UserWarning):
    """n_hard exceeds the photon number, so the hard event is empty."""
