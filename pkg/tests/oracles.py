"""Independent brute-force oracles used to pin expected values.

Everything here is deliberately naive (exhaustive grids, double loops) and
shares no code path with the implementations under test.
"""

from __future__ import annotations

import numpy as np


def grid_refine_minimize(objective, p, radius, rounds=10, grid=13,
                         center=None):
    """Minimize a vectorized objective over R^p by iterative grid refinement.

    `objective` maps an (m, p) array of points to m values.  Each round lays
    a full grid over the current box, keeps the best point and shrinks the
    box to 1.5 grid cells around it.
    """
    center = np.zeros(p) if center is None else np.asarray(center, float)
    best_val = float(objective(center[None, :])[0])
    for _ in range(rounds):
        axes = [np.linspace(c - radius, c + radius, grid) for c in center]
        mesh = np.meshgrid(*axes, indexing="ij")
        points = np.stack([m.ravel() for m in mesh], axis=1)
        values = objective(points)
        k = int(np.argmin(values))
        if values[k] < best_val:
            best_val = float(values[k])
            center = points[k]
        radius *= 3.0 / (grid - 1)
    return center, best_val


def weighted_lasso_objective(X, r, lam, weights):
    """Vectorized (1/2n)||r - X theta||^2 + lam sum w|theta| over rows of theta."""
    n = X.shape[0]

    def f(thetas):
        resid = r[None, :] - thetas @ X.T
        pen = (np.abs(thetas) * weights[None, :]).sum(axis=1)
        return (resid ** 2).sum(axis=1) / (2.0 * n) + lam * pen

    return f


def brute_weighted_lasso(X, r, lam, weights, rounds=12, grid=13):
    """Grid-refinement minimum of the weighted-l1 quadratic objective."""
    ls = np.linalg.lstsq(X, r, rcond=None)[0]
    radius = max(1.0, 2.0 * float(np.max(np.abs(ls))))
    return grid_refine_minimize(weighted_lasso_objective(X, r, lam, weights),
                                X.shape[1], radius, rounds=rounds, grid=grid)


def lad_objective(X, y, lam):
    """Vectorized (1/n) sum |y - X theta| + lam sum |theta| over rows of theta."""
    n = X.shape[0]

    def f(thetas):
        resid = y[None, :] - thetas @ X.T
        return np.abs(resid).sum(axis=1) / n + lam * np.abs(thetas).sum(axis=1)

    return f


def brute_lad_lasso(X, y, lam, rounds=14, grid=13):
    ls = np.linalg.lstsq(X, y, rcond=None)[0]
    radius = max(1.0, 2.0 * float(np.max(np.abs(ls))))
    return grid_refine_minimize(lad_objective(X, y, lam), X.shape[1], radius,
                                rounds=rounds, grid=grid)


def double_loop_ranks(y):
    """Literal indicator-sum evaluation of the rank definition."""
    y = np.asarray(y, dtype=np.float64)
    n = y.shape[0]
    return np.array([int(np.sum(y <= y[i])) for i in range(n)], dtype=np.int64)


def double_loop_ustat(X, y):
    """Mean over ordered pairs i != j of 1{y_j <= y_i} x_i, by double loop."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = X.shape[0]
    acc = np.zeros(X.shape[1])
    for i in range(n):
        for j in range(n):
            if i != j and y[j] <= y[i]:
                acc += X[i]
    return acc / (n * (n - 1.0))


def lad_univariate_breakpoints(x, y, lam):
    """Exact 1-d LAD-lasso minimum by scanning every breakpoint candidate."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = x.shape[0]
    candidates = [0.0] + [y[i] / x[i] for i in range(n) if x[i] != 0.0]
    best_t, best_v = 0.0, np.inf
    for t in candidates:
        v = float(np.mean(np.abs(y - x * t)) + lam * abs(t))
        if v < best_v:
            best_t, best_v = t, v
    return best_t, best_v
