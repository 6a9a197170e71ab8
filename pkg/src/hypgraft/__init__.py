"""Computational tools for hyperbolic surfaces, collars and grafting."""
from .errors import (
    BudgetError,
    ConfigError,
    ConvergenceError,
    DomainError,
    GeometryError,
    HypgraftError,
    Unsupported,
)

__version__ = "0.1.0"
