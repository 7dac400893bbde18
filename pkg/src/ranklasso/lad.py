"""LADLasso baseline: l1 loss with l1 penalty, solved by coordinate descent.

Each coordinate update is an exact one-dimensional minimization: a weighted
median over the residual breakpoints, with the penalty entering as one extra
pseudo-observation at zero.  The objective is therefore non-increasing per
update.  An optional unpenalized intercept is handled as one more coordinate
(the l1 loss does not absorb location by centering, so baselines on shifted
responses need it).

Because the l1 loss couples coordinates, plain cyclic descent can stall at
points (typically interpolation vertices) that are coordinate-wise
stationary but not optimal.  For desk-scale problems the solver therefore
polishes after every stall: it finds the minimum-norm element v of the
subdifferential (a small box-constrained least squares); if ||v|| is not
negligible, -v is a strict descent direction and one exact weighted-median
line search along it escapes the stall, after which sweeping resumes.
Large problems stop at the sweep tolerance like standard implementations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .cd import DesignMatrix, _as_matrix, _as_target
from .errors import InvalidInputError, NonConvergedError

DEFAULT_TOL = 1e-7
DEFAULT_MAX_ITER = 20_000
_POLISH_SIZE = 2_000    # n*p at or below this gets the stall polish
_POLISH_ROUNDS = 200
_ACTIVE_TOL = 1e-10
_CERT_TOL = 1e-8


@dataclass(frozen=True)
class LadFit:
    coefficients: np.ndarray
    lam: float
    objective: float
    support: np.ndarray
    iterations: int
    intercept: float = 0.0


def default_lambda_lad(n: int, p: int) -> float:
    """Penalty level 1.5 * sqrt(log(p) / n) used by the baseline comparisons."""
    if n < 1 or p < 2:
        raise InvalidInputError("need n >= 1 and p >= 2 for the default penalty")
    return 1.5 * math.sqrt(math.log(p) / n)


@njit(cache=True, nogil=True)
def _lad_objective(resid, theta, lams):  # pragma: no cover - jit
    n = resid.shape[0]
    s = 0.0
    for i in range(n):
        s += abs(resid[i])
    s /= n
    for j in range(theta.shape[0]):
        s += lams[j] * abs(theta[j])
    return s


@njit(cache=True, nogil=True)
def _weighted_median(pts, wts, m):  # pragma: no cover - jit
    order = np.argsort(pts[:m])
    total = 0.0
    for k in range(m):
        total += wts[k]
    half = 0.5 * total
    acc = 0.0
    for k in range(m):
        acc += wts[order[k]]
        if acc >= half:
            return pts[order[k]]
    return pts[order[m - 1]]


@njit(cache=True, nogil=True)
def _lad_sweeps(X, resid, theta, lams, tol, max_sweeps):  # pragma: no cover - jit
    """Cyclic weighted-median sweeps until the objective settles."""
    n, p = X.shape
    pts = np.empty(n + 1)
    wts = np.empty(n + 1)
    obj = _lad_objective(resid, theta, lams)
    sweeps = 0
    while sweeps < max_sweeps:
        moved = False
        for j in range(p):
            m = 0
            for i in range(n):
                xij = X[i, j]
                if xij != 0.0:
                    pts[m] = resid[i] / xij + theta[j]
                    wts[m] = abs(xij) / n
                    m += 1
            if lams[j] > 0.0:
                pts[m] = 0.0
                wts[m] = lams[j]
                m += 1
            if m == 0:
                continue
            new = _weighted_median(pts, wts, m)
            d = new - theta[j]
            if d != 0.0:
                for i in range(n):
                    resid[i] -= X[i, j] * d
                theta[j] = new
                moved = True
        sweeps += 1
        new_obj = _lad_objective(resid, theta, lams)
        if not moved or abs(obj - new_obj) <= tol * (1.0 + abs(new_obj)):
            return sweeps, new_obj, True
        obj = new_obj
    return sweeps, _lad_objective(resid, theta, lams), False


def _min_norm_subgradient(mat, resid, theta, lams):
    """Nearest-to-zero element of the subdifferential at the current point.

    The subdifferential is g plus convex combinations of the active-row
    columns x_i/n (coefficients in [-1,1]) and the zero-coordinate penalty
    columns lams_j e_j; the projection is solved by projected coordinate
    descent.
    """
    n, p = mat.shape
    scale = 1.0 + float(np.max(np.abs(resid), initial=0.0))
    is_active = np.abs(resid) <= _ACTIVE_TOL * scale
    # coefficients within float noise of zero sit on the penalty kink
    t_scale = 1.0 + float(np.max(np.abs(theta), initial=0.0))
    is_zero = (np.abs(theta) <= 1e-12 * t_scale) & (lams > 0.0)
    g = -(mat[~is_active].T @ np.sign(resid[~is_active])) / n
    g += lams * np.where(is_zero, 0.0, np.sign(theta))
    active = np.flatnonzero(is_active)
    zeros = np.flatnonzero(is_zero)
    m = active.size + zeros.size
    if m == 0:
        return g
    cols = np.empty((p, m))
    cols[:, :active.size] = mat[active].T / n
    cols[:, active.size:] = 0.0
    for k, j in enumerate(zeros):
        cols[j, active.size + k] = lams[j]
    col_sq = (cols * cols).sum(axis=0)
    gamma = np.zeros(m)
    v = g.copy()
    for _ in range(500):
        shift = 0.0
        for k in range(m):
            if col_sq[k] == 0.0:
                continue
            new = min(1.0, max(-1.0, gamma[k] - (cols[:, k] @ v) / col_sq[k]))
            d = new - gamma[k]
            if d != 0.0:
                v += cols[:, k] * d
                gamma[k] = new
                shift = max(shift, abs(d))
        if shift <= 1e-13:
            break
    return v


def _line_minimize(mat, resid, theta, lams, u):
    """Exact minimizer of t -> objective(theta + t u), a weighted median."""
    n = mat.shape[0]
    d = mat @ u
    live = d != 0.0
    pts = resid[live] / d[live]
    wts = np.abs(d[live]) / n
    uj = (u != 0.0) & (lams > 0.0)
    if uj.any():
        pts = np.concatenate([pts, -theta[uj] / u[uj]])
        wts = np.concatenate([wts, lams[uj] * np.abs(u[uj])])
    if pts.size == 0:
        return 0.0, d
    order = np.argsort(pts)
    acc = np.cumsum(wts[order])
    k = int(np.searchsorted(acc, 0.5 * acc[-1]))
    return float(pts[order[min(k, pts.size - 1)]]), d


def _penalty(theta, lams):
    return float((lams * np.abs(theta)).sum())


def _escape_stall(mat, resid, theta, lams):
    """One certified descent step out of a stall; False means (near-)optimal."""
    v = _min_norm_subgradient(mat, resid, theta, lams)
    norm = float(np.linalg.norm(v))
    if norm <= _CERT_TOL:
        return False
    u = -v / norm
    t, d = _line_minimize(mat, resid, theta, lams, u)
    if t == 0.0:
        return False
    base = float(np.mean(np.abs(resid))) + _penalty(theta, lams)
    cand_theta = theta + t * u
    # snap float-noise coefficients onto the kink they represent
    t_scale = 1.0 + float(np.max(np.abs(cand_theta), initial=0.0))
    snap = (np.abs(cand_theta) <= 1e-14 * t_scale) & (lams > 0.0)
    cand_theta[snap] = 0.0
    cand_resid = resid - t * d
    cand = float(np.mean(np.abs(cand_resid))) + _penalty(cand_theta, lams)
    if cand >= base - 1e-14 * (1.0 + abs(base)):
        return False
    theta[:] = cand_theta
    resid[:] = cand_resid
    return True


def fit_lad_lasso(X, y, lam: float, tol: float = DEFAULT_TOL,
                  max_iter: int = DEFAULT_MAX_ITER,
                  warm_start: np.ndarray | None = None,
                  fit_intercept: bool = False) -> LadFit:
    """Minimize (1/n) sum |y_i - b - theta'x_i| + lam * sum |theta_j|.

    The intercept b is fitted only when `fit_intercept` is set (as an
    unpenalized coordinate) and is zero otherwise.  Sweeps terminate when a
    full pass changes the objective by at most tol*(1+|obj|) or leaves every
    coordinate in place; on desk-scale problems stalls are then escaped
    along certified descent directions until the minimum-norm subgradient
    vanishes.  Exceeding max_iter sweeps raises NonConvergedError with the
    best iterate.
    """
    mat = np.ascontiguousarray(_as_matrix(X))
    n, p = mat.shape
    target = _as_target(y, n)
    if lam < 0:
        raise InvalidInputError("lambda must be nonnegative")
    if tol <= 0:
        raise InvalidInputError("tol must be positive")
    if warm_start is None:
        theta = np.zeros(p)
    else:
        theta = np.array(warm_start, dtype=np.float64)
        if theta.shape != (p,):
            raise InvalidInputError("warm start has wrong shape")
    if fit_intercept:
        mat = np.ascontiguousarray(np.column_stack([np.ones(n), mat]))
        theta = np.concatenate([[0.0], theta])
        lams = np.concatenate([[0.0], np.full(p, float(lam))])
    else:
        lams = np.full(p, float(lam))
    resid = target - mat @ theta
    total = 0
    polish = n * p <= _POLISH_SIZE
    for _ in range(_POLISH_ROUNDS):
        sweeps, obj, settled = _lad_sweeps(mat, resid, theta, lams,
                                           float(tol), int(max_iter) - total)
        total += sweeps
        if not settled:
            raise NonConvergedError("LAD coordinate descent did not stabilize",
                                    coefficients=theta[1:] if fit_intercept
                                    else theta,
                                    violation=obj, iterations=total)
        if not polish or not _escape_stall(mat, resid, theta, lams):
            break
    intercept = float(theta[0]) if fit_intercept else 0.0
    coefs = theta[1:] if fit_intercept else theta
    return LadFit(coefficients=coefs, lam=float(lam),
                  objective=_lad_objective(resid, theta, lams),
                  support=np.flatnonzero(coefs), iterations=total,
                  intercept=intercept)


def lad_objective(X, y, theta: np.ndarray, lam: float,
                  intercept: float = 0.0) -> float:
    """Evaluate (1/n) sum |y_i - intercept - theta'x_i| + lam * sum |theta_j|."""
    mat = _as_matrix(X)
    target = _as_target(y, mat.shape[0])
    th = np.asarray(theta, dtype=np.float64)
    return float(np.mean(np.abs(target - intercept - mat @ th))
                 + lam * np.abs(th).sum())


__all__ = ["LadFit", "DesignMatrix", "default_lambda_lad", "fit_lad_lasso",
           "lad_objective"]
