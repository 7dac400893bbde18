"""Selection-quality and ordering-prediction metrics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError


@dataclass(frozen=True)
class ReplicateEval:
    """Selection counts and rates for one replicate.

    S = R - V, nmp = V + p0 - S, fdp = V / max(R, 1), tpp = S / p0
    (tpp is 1.0 when p0 = 0: an empty truth is recovered vacuously).
    """

    R: int
    V: int
    S: int
    fdp: float
    tpp: float
    nmp: int


@dataclass(frozen=True)
class FdTpCurve:
    """False discoveries vs true positives along decreasing |coefficient|.

    tp[k] + fd[k] == k + 1 for every prefix length k.
    """

    tp: np.ndarray
    fd: np.ndarray

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.tp.tolist(), self.fd.tolist()))


def eval_selection(support, T, p0: int) -> ReplicateEval:
    """Score a selected support against the true one."""
    sel = {int(j) for j in np.asarray(support, dtype=np.int64).ravel()}
    truth = {int(j) for j in np.asarray(T, dtype=np.int64).ravel()}
    R = len(sel)
    S = len(sel & truth)
    V = R - S
    fdp = V / max(R, 1)
    tpp = S / p0 if p0 > 0 else 1.0
    return ReplicateEval(R=R, V=V, S=S, fdp=float(fdp), tpp=float(tpp),
                         nmp=int(V + p0 - S))


def fd_tp_curve(coefficients, T) -> FdTpCurve:
    """Accumulate FD/TP counts over features ordered by decreasing |coefficient|.

    Zero coefficients are excluded; ties are broken by ascending feature index.
    """
    coefs = np.asarray(coefficients, dtype=np.float64)
    truth = {int(j) for j in np.asarray(T, dtype=np.int64).ravel()}
    nonzero = np.flatnonzero(coefs)
    order = nonzero[np.lexsort((nonzero, -np.abs(coefs[nonzero])))]
    tp = np.zeros(order.size, dtype=np.int64)
    fd = np.zeros(order.size, dtype=np.int64)
    t = f = 0
    for k, j in enumerate(order):
        if int(j) in truth:
            t += 1
        else:
            f += 1
        tp[k], fd[k] = t, f
    return FdTpCurve(tp=tp, fd=fd)


def opq(theta_hat, X_test, y_test) -> float:
    """Fraction of test pairs whose response ordering matches the score ordering.

    Pairs with a zero difference on either side count as not properly
    ordered, so the zero estimator scores 0.
    """
    X = np.asarray(X_test, dtype=np.float64)
    y = np.asarray(y_test, dtype=np.float64)
    if X.ndim != 2 or y.ndim != 1 or y.shape[0] != X.shape[0]:
        raise InvalidInputError("test design and response shapes do not match")
    n_t = y.shape[0]
    if n_t < 2:
        raise InvalidInputError("need at least two test observations")
    scores = X @ np.asarray(theta_hat, dtype=np.float64)
    dy = np.sign(y[:, None] - y[None, :])
    ds = np.sign(scores[:, None] - scores[None, :])
    upper = np.triu(np.ones((n_t, n_t), dtype=bool), k=1)
    proper = (dy == ds) & (dy != 0) & (ds != 0) & upper
    return float(proper.sum() / (n_t * (n_t - 1) / 2))
