"""Selection procedures built on the coordinate-descent solvers.

Implements the compared methods as pipelines: RankLasso (rL), adaptive
RankLasso (arL), thresholded RankLasso (thrL), LADLasso (LAD),
cross-validated plain Lasso (cv) and cross-validated RankLasso (cvrL).
All rank-based pipelines consume the response only through centered ranks,
so they are exactly invariant under strictly increasing transformations of
y once the cross-validation seed is fixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .cd import (DEFAULT_MAX_ITER, DEFAULT_TOL, DesignMatrix, PenaltySpec,
                 fit_weighted_lasso, lambda_max, lambda_path)
from .errors import DataError, InvalidFoldsError, InvalidInputError
from .lad import default_lambda_lad, fit_lad_lasso
from .ranks import centered_ranks
from .simdata import substream

METHODS = ("rL", "arL", "thrL", "LAD", "cv", "cvrL")
LAMBDA_RULES = ("paper-formula", "fixed", "cross-validated")

WEIGHT_CAP_FACTOR = 0.1     # cap numerator: w_j = 0.1*lam_rl / |theta_j| on large coefs
ADAPTIVE_LAMBDA_FACTOR = 2.0
CV_GRID_SIZE = 100
CV_GRID_DECADES = 3
CV_PATH_TOL = 1e-6  # path fits certify here; final fits at the caller's tol
_FOLD_STREAM = 0xf01d


@dataclass(frozen=True)
class SelectorSpec:
    """Which method to run and how its penalty level is chosen."""

    method: str
    lambda_rule: str = "paper-formula"
    lambda_fixed: float | None = None
    cv_folds: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.method not in METHODS:
            raise InvalidInputError(f"unknown method {self.method!r}")
        if self.lambda_rule not in LAMBDA_RULES:
            raise InvalidInputError(f"unknown lambda rule {self.lambda_rule!r}")
        if self.lambda_rule == "fixed" and self.lambda_fixed is None:
            raise InvalidInputError("fixed lambda rule needs lambda_fixed")
        if self.cv_folds < 2:
            raise InvalidInputError("cv_folds must be at least 2")


@dataclass(frozen=True)
class SelectionResult:
    """Coefficients and support of one selection procedure."""

    coefficients: np.ndarray
    support: np.ndarray
    method: SelectorSpec
    diagnostics: dict[str, Any] = field(default_factory=dict)


def default_lambda_rl(n: int, p: int) -> float:
    """Penalty level 0.3 * sqrt(log(p) / n) used by plain RankLasso."""
    if n < 1 or p < 2:
        raise InvalidInputError("need n >= 1 and p >= 2 for the default penalty")
    return 0.3 * math.sqrt(math.log(p) / n)


def _require_design(X) -> DesignMatrix:
    if not isinstance(X, DesignMatrix):
        raise InvalidInputError("estimators expect a standardized DesignMatrix")
    return X


def rank_lasso(X: DesignMatrix, y, lam: float | None = None,
               tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER,
               spec: SelectorSpec | None = None) -> SelectionResult:
    """Lasso on centered ranks at the paper-formula penalty (or a given one)."""
    X = _require_design(X)
    n, p = X.shape
    if lam is None:
        lam = default_lambda_rl(n, p)
    r = centered_ranks(y)
    fit = fit_weighted_lasso(X, r, PenaltySpec(lam=lam, weights=np.ones(p)),
                             tol=tol, max_iter=max_iter)
    return SelectionResult(
        coefficients=fit.coefficients, support=fit.support,
        method=spec or SelectorSpec(method="rL"),
        diagnostics={"lambda": lam, "iterations": fit.iterations,
                     "max_kkt_violation": fit.max_kkt_violation})


def adaptive_weights(coefficients: np.ndarray, lam_rl: float) -> np.ndarray:
    """Per-feature weights for the second adaptive stage.

    w_j = 0.1*lam_rl/|theta_j| when |theta_j| > 0.1*lam_rl (capping the
    penalty on clearly selected features) and 1/|theta_j| otherwise; a zero
    coefficient gets weight +inf, excluding the feature outright.
    """
    coefs = np.asarray(coefficients, dtype=np.float64)
    cap = WEIGHT_CAP_FACTOR * lam_rl
    weights = np.full(coefs.shape[0], np.inf)
    for j in np.flatnonzero(coefs):
        a = abs(coefs[j])
        weights[j] = cap / a if a > cap else 1.0 / a
    return weights


def threshold_coefficients(coefficients: np.ndarray, target_size: int
                           ) -> tuple[np.ndarray, float, dict[str, Any]]:
    """Zero all coefficients below the smallest cut keeping `target_size`.

    Ties at the cut magnitude are all kept (flagged); a target at or above
    the current support size keeps everything (flagged when strictly above).
    Returns (thresholded coefficients, cut value, flags).
    """
    coefs = np.asarray(coefficients, dtype=np.float64)
    flags: dict[str, Any] = {}
    magnitudes = np.abs(coefs[np.flatnonzero(coefs)])
    if target_size < 0:
        raise InvalidInputError("target_size must be nonnegative")
    if target_size == 0:
        return np.zeros_like(coefs), np.inf, flags
    if target_size >= magnitudes.size:
        if target_size > magnitudes.size:
            flags["target_exceeds_support"] = True
        delta = float(magnitudes.min()) if magnitudes.size else np.inf
        return coefs.copy(), delta, flags
    delta = float(np.sort(magnitudes)[::-1][target_size - 1])
    kept = np.where(np.abs(coefs) >= delta, coefs, 0.0)
    if np.count_nonzero(kept) > target_size:
        flags["threshold_tie"] = True
    return kept, delta, flags


def adaptive_rank_lasso(X: DesignMatrix, y, lam_rl: float | None = None,
                        tol: float = DEFAULT_TOL,
                        max_iter: int = DEFAULT_MAX_ITER,
                        spec: SelectorSpec | None = None) -> SelectionResult:
    """Two-stage weighted RankLasso.

    Stage 1 is plain RankLasso at lam_rl; stage 2 solves the weighted
    problem at 2*lam_rl with `adaptive_weights`.  An empty stage-1 support
    short circuits to an empty selection (flagged, not an error).
    """
    X = _require_design(X)
    n, p = X.shape
    if lam_rl is None:
        lam_rl = default_lambda_rl(n, p)
    spec = spec or SelectorSpec(method="arL")
    stage1 = rank_lasso(X, y, lam=lam_rl, tol=tol, max_iter=max_iter)
    if stage1.support.size == 0:
        return SelectionResult(
            coefficients=np.zeros(p), support=stage1.support, method=spec,
            diagnostics={"stage1_empty": True, "stage1": stage1,
                         "lambda_rl": lam_rl})
    weights = adaptive_weights(stage1.coefficients, lam_rl)
    lam_a = ADAPTIVE_LAMBDA_FACTOR * lam_rl
    fit = fit_weighted_lasso(X, centered_ranks(y),
                             PenaltySpec(lam=lam_a, weights=weights),
                             tol=tol, max_iter=max_iter)
    return SelectionResult(
        coefficients=fit.coefficients, support=fit.support, method=spec,
        diagnostics={"stage1": stage1, "weights": weights, "lambda_rl": lam_rl,
                     "lambda_a": lam_a, "iterations": fit.iterations,
                     "max_kkt_violation": fit.max_kkt_violation})


def _fold_indices(n: int, folds: int, seed: int) -> list[np.ndarray]:
    if folds < 2:
        raise InvalidFoldsError("need at least 2 folds")
    if folds > n:
        raise InvalidFoldsError("more folds than observations")
    perm = substream(seed, _FOLD_STREAM).permutation(n)
    parts = np.array_split(perm, folds)
    for part in parts:
        if n - part.size < 2:
            raise InvalidFoldsError("a training fold would have fewer than 2 observations")
    return parts


def _cv_grid(lam_max: float) -> np.ndarray:
    if lam_max <= 0:
        raise DataError("degenerate target: all penalty gradients vanish")
    grid = np.geomspace(lam_max, lam_max / 10.0 ** CV_GRID_DECADES, CV_GRID_SIZE)
    return np.unique(grid)[::-1]


def _cv_select(X: DesignMatrix, y: np.ndarray, folds: int, seed: int,
               rank_target: bool, tol: float, max_iter: int
               ) -> tuple[float, np.ndarray, np.ndarray, float, float]:
    """Grid cross-validation; returns (lambda, grid, mse, intercept, scale).

    Per-fold path fits are certified at max(tol, CV_PATH_TOL): the saturated
    end of a three-decade grid can stall just above 1e-7 on degenerate
    designs, and selection only needs validation errors, not optimizer-grade
    iterates.
    """
    path_tol = max(tol, CV_PATH_TOL)
    n, p = X.shape
    y = np.asarray(y, dtype=np.float64)
    parts = _fold_indices(n, folds, seed)
    if rank_target:
        full_target = centered_ranks(y).values
        intercept, scale = 0.0, 1.0
    else:
        # fit on the shifted/scaled response so tolerances are meaningful
        # under heavy-tailed y; scaling is transparent to the CV argmin
        intercept = float(np.mean(y))
        scale = float(np.std(y - intercept))
        if scale == 0.0:
            raise DataError("degenerate target: response is constant")
        full_target = (y - intercept) / scale
    grid = _cv_grid(lambda_max(X, full_target))
    sq_err = np.zeros(grid.size)
    counts = np.zeros(grid.size)
    weights = np.ones(p)
    for part in parts:
        val_mask = np.zeros(n, dtype=bool)
        val_mask[part] = True
        X_tr, X_val = X.data[~val_mask], X.data[val_mask]
        y_tr, y_val = y[~val_mask], y[val_mask]
        if rank_target:
            r_tr = centered_ranks(y_tr).values
            sorted_tr = np.sort(y_tr)
            target_val = (np.searchsorted(sorted_tr, y_val, side="right")
                          / y_tr.shape[0] - 0.5)
        else:
            shift = float(np.mean(y_tr))
            r_tr = (y_tr - shift) / scale
            target_val = (y_val - shift) / scale
        fits = lambda_path(X_tr, r_tr, weights, grid, tol=path_tol,
                           max_iter=max_iter)
        for k, fit in enumerate(fits):
            resid = target_val - X_val @ fit.coefficients
            sq_err[k] += float(resid @ resid)
            counts[k] += resid.shape[0]
    mse = sq_err / counts
    best = int(np.argmin(mse))
    return float(grid[best]), grid, mse, intercept, scale


def cv_rank_lasso(X: DesignMatrix, y, folds: int = 5, seed: int = 0,
                  tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER,
                  spec: SelectorSpec | None = None) -> SelectionResult:
    """RankLasso with the penalty chosen by cross-validation.

    Per fold, centered ranks are recomputed on the training part and the
    held-out target is the training empirical CDF evaluated at the held-out
    response, minus 1/2.  The grid has 100 log-spaced points spanning three
    decades below lambda_max.
    """
    X = _require_design(X)
    lam, grid, mse, _, _ = _cv_select(X, np.asarray(y, dtype=np.float64),
                                      folds, seed, rank_target=True, tol=tol,
                                      max_iter=max_iter)
    result = rank_lasso(X, y, lam=lam, tol=tol, max_iter=max_iter)
    return SelectionResult(
        coefficients=result.coefficients, support=result.support,
        method=spec or SelectorSpec(method="cvrL", lambda_rule="cross-validated",
                                    cv_folds=folds, seed=seed),
        diagnostics={"lambda": lam, "cv_lambdas": grid, "cv_mse": mse,
                     **{k: v for k, v in result.diagnostics.items() if k != "lambda"}})


def cv_plain_lasso(X: DesignMatrix, y, folds: int = 5, seed: int = 0,
                   tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER,
                   spec: SelectorSpec | None = None) -> SelectionResult:
    """Regular Lasso on the raw response, penalty chosen by cross-validation.

    The response is centered with the training-fold mean (the intercept a
    centered design absorbs); validation error is plain squared error on the
    held-out raw response.
    """
    X = _require_design(X)
    y = np.asarray(y, dtype=np.float64)
    lam, grid, mse, intercept, scale = _cv_select(X, y, folds, seed,
                                                  rank_target=False, tol=tol,
                                                  max_iter=max_iter)
    p = X.shape[1]
    fit = fit_weighted_lasso(X, (y - intercept) / scale,
                             PenaltySpec(lam=lam, weights=np.ones(p)),
                             tol=tol, max_iter=max_iter)
    return SelectionResult(
        coefficients=fit.coefficients * scale, support=fit.support,
        method=spec or SelectorSpec(method="cv", lambda_rule="cross-validated",
                                    cv_folds=folds, seed=seed),
        diagnostics={"lambda": lam, "cv_lambdas": grid, "cv_mse": mse,
                     "intercept": intercept, "target_scale": scale,
                     "iterations": fit.iterations,
                     "max_kkt_violation": fit.max_kkt_violation})


def thresholded_rank_lasso(X: DesignMatrix, y, target_size: int | None = None,
                           folds: int = 5, seed: int = 0,
                           tol: float = DEFAULT_TOL,
                           max_iter: int = DEFAULT_MAX_ITER,
                           spec: SelectorSpec | None = None) -> SelectionResult:
    """Hard-thresholded cross-validated RankLasso.

    Stage 1 is cv_rank_lasso.  The threshold is the smallest value keeping
    exactly `target_size` coefficients; when omitted, the target is the
    support size of adaptive RankLasso on the same data.  Coefficients tied
    at the cut are all kept (flagged); a target exceeding the stage-1
    support keeps the whole support (flagged).
    """
    X = _require_design(X)
    spec = spec or SelectorSpec(method="thrL", lambda_rule="cross-validated",
                                cv_folds=folds, seed=seed)
    diagnostics: dict[str, Any] = {}
    if target_size is None:
        arl = adaptive_rank_lasso(X, y, tol=tol, max_iter=max_iter)
        target_size = int(arl.support.size)
        diagnostics["target_from_adaptive"] = arl
    stage1 = cv_rank_lasso(X, y, folds=folds, seed=seed, tol=tol,
                           max_iter=max_iter)
    diagnostics.update({"stage1": stage1, "target_size": target_size})
    kept, delta, flags = threshold_coefficients(stage1.coefficients, target_size)
    diagnostics.update(flags)
    diagnostics["delta"] = delta
    return SelectionResult(coefficients=kept, support=np.flatnonzero(kept),
                           method=spec, diagnostics=diagnostics)


def fit_selector(spec: SelectorSpec, X: DesignMatrix, y,
                 tol: float = DEFAULT_TOL,
                 max_iter: int = DEFAULT_MAX_ITER) -> SelectionResult:
    """Run the selector described by `spec` on (X, y)."""
    X = _require_design(X)
    n, p = X.shape

    def fixed_or_default(default: float) -> float | None:
        if spec.lambda_rule == "fixed":
            return float(spec.lambda_fixed)
        return default

    if spec.method == "rL":
        if spec.lambda_rule == "cross-validated":
            return cv_rank_lasso(X, y, folds=spec.cv_folds, seed=spec.seed,
                                 tol=tol, max_iter=max_iter, spec=spec)
        return rank_lasso(X, y, lam=fixed_or_default(None), tol=tol,
                          max_iter=max_iter, spec=spec)
    if spec.method == "arL":
        return adaptive_rank_lasso(X, y, lam_rl=fixed_or_default(None),
                                   tol=tol, max_iter=max_iter, spec=spec)
    if spec.method == "thrL":
        return thresholded_rank_lasso(X, y, folds=spec.cv_folds, seed=spec.seed,
                                      tol=tol, max_iter=max_iter, spec=spec)
    if spec.method == "cvrL":
        return cv_rank_lasso(X, y, folds=spec.cv_folds, seed=spec.seed,
                             tol=tol, max_iter=max_iter, spec=spec)
    if spec.method == "cv":
        return cv_plain_lasso(X, y, folds=spec.cv_folds, seed=spec.seed,
                              tol=tol, max_iter=max_iter, spec=spec)
    # LAD baseline; the intercept is essential for shifted responses since
    # the l1 loss does not absorb location by centering
    lam = spec.lambda_fixed if spec.lambda_rule == "fixed" else default_lambda_lad(n, p)
    fit = fit_lad_lasso(X, y, lam=float(lam), max_iter=max_iter,
                        fit_intercept=True)
    return SelectionResult(
        coefficients=fit.coefficients, support=fit.support, method=spec,
        diagnostics={"lambda": fit.lam, "objective": fit.objective,
                     "iterations": fit.iterations, "intercept": fit.intercept})
