"""Exception hierarchy shared across the package."""

from __future__ import annotations

import numpy as np


class RankLassoError(Exception):
    """Base class for all package errors."""


class InvalidInputError(RankLassoError, ValueError):
    """Raised when an argument violates a documented precondition."""


class DegenerateColumnError(RankLassoError, ValueError):
    """Raised when a design column has zero variance and cannot be standardized."""

    def __init__(self, column: int):
        self.column = int(column)
        super().__init__(f"column {self.column} has zero variance")


class NonConvergedError(RankLassoError, RuntimeError):
    """Raised when a solver exhausts max_iter without certifying optimality.

    Carries the best iterate found and its residual violation so callers can
    inspect or salvage partial results.
    """

    def __init__(self, message: str, coefficients: np.ndarray, violation: float,
                 iterations: int):
        self.coefficients = coefficients
        self.violation = float(violation)
        self.iterations = int(iterations)
        super().__init__(f"{message} (iterations={iterations}, violation={violation:.3e})")


class InvalidFoldsError(RankLassoError, ValueError):
    """Raised when a cross-validation split would leave a training fold too small."""


class ConfigError(RankLassoError, ValueError):
    """Raised for malformed experiment or real-data configuration (CLI exit code 2)."""


class DataError(RankLassoError, ValueError):
    """Raised for malformed or degenerate input data (CLI exit code 3)."""
