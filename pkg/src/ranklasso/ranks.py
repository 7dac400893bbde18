"""Rank transform of the response vector.

The response enters every rank-based objective only through its centered
ranks R_i/n - 0.5, where R_i counts the observations less than or equal to
y_i (tied values therefore share the maximal rank).  Both functions here are
pure and deterministic.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError


@dataclass(frozen=True)
class CenteredRanks:
    """Centered ranks R_i/n - 0.5 of a response vector.

    values lie in [1/n - 0.5, 0.5]; for a tie-free response the sorted values
    are exactly (k/n - 0.5) for k = 1..n.
    """

    values: np.ndarray
    n: int


def _validate_response(y, min_n: int) -> np.ndarray:
    arr = np.asarray(y, dtype=np.float64)
    if arr.ndim != 1:
        raise InvalidInputError("response must be one-dimensional")
    if arr.shape[0] < min_n:
        raise InvalidInputError(f"response needs at least {min_n} observations")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("response contains non-finite entries")
    return arr


def ranks(y) -> np.ndarray:
    """Return the integer ranks R_i = #{j : y_j <= y_i}.

    Computed by sorting in O(n log n); ties share the maximal rank, so for
    tie-free input the result is a permutation of 1..n.
    """
    arr = _validate_response(y, min_n=1)
    n = arr.shape[0]
    order = np.argsort(arr, kind="stable")
    sorted_y = arr[order]
    # count of values <= v is the insertion point to the right of v
    hi = np.searchsorted(sorted_y, sorted_y, side="right")
    if np.any(hi != np.arange(1, n + 1)):
        warnings.warn("ties detected in response; tied values share the maximal rank",
                      stacklevel=2)
    out = np.empty(n, dtype=np.int64)
    out[order] = hi
    return out


def centered_ranks(y) -> CenteredRanks:
    """Return the centered ranks R_i/n - 0.5 used as the regression target."""
    arr = _validate_response(y, min_n=2)
    n = arr.shape[0]
    r = ranks(arr)
    return CenteredRanks(values=r / n - 0.5, n=n)
