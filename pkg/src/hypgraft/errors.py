"""Exception types shared by every module.

The CLI maps these to exit codes, so each module raises the most specific
class that applies instead of a bare ``ValueError``.
"""


class HypgraftError(Exception):
    """Base class for all package errors."""


class DomainError(HypgraftError, ValueError):
    """An input lies outside the domain where the quantity is defined."""


class ConvergenceError(HypgraftError, RuntimeError):
    """An iterative solver failed to reach its tolerance."""


class GeometryError(HypgraftError):
    """A construction produced an invalid configuration, e.g. overlapping collars."""


class ConfigError(HypgraftError, ValueError):
    """Inconsistent or unknown configuration."""


class Unsupported(HypgraftError):
    """The request is well posed but outside what this package computes."""


class BudgetError(HypgraftError, RuntimeError):
    """An enumeration exceeded its element budget."""
