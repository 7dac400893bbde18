"""Population and finite-sample quantities used as test oracles.

Everything here exists to make theorem-level statements checkable: the
pairwise-comparison U-statistic and its expectation, the population target
theta0 = ((n-1)/n) H^{-1} mu of the rank objective, the proportionality
constant gamma_beta, cone invertibility factor bounds, and the exact
algebraic decomposition of the rank-objective gradient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidInputError
from .ranks import ranks

Link = Callable[[np.ndarray, np.ndarray], np.ndarray]
Noise = Callable[[np.random.Generator, int], np.ndarray]


@dataclass(frozen=True)
class PopulationModel:
    """True covariance, coefficients and support of a single index model."""

    H: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        H = np.asarray(self.H, dtype=np.float64)
        beta = np.asarray(self.beta, dtype=np.float64)
        if H.ndim != 2 or H.shape[0] != H.shape[1]:
            raise InvalidInputError("H must be square")
        if beta.shape != (H.shape[0],):
            raise InvalidInputError("beta length must match H")
        if not np.allclose(H, H.T):
            raise InvalidInputError("H must be symmetric")
        if not np.allclose(np.diag(H), 1.0):
            raise InvalidInputError("H must have unit diagonal")
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "beta", beta)

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.beta)

    @property
    def p0(self) -> int:
        return int(self.support.size)


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Point estimate plus a batch-based standard error."""

    value: float
    se: float
    n_mc: int


@dataclass(frozen=True)
class Theta0Estimate:
    """Componentwise Monte-Carlo estimate of theta0 with standard errors."""

    value: np.ndarray
    se: np.ndarray
    n_mc: int


@dataclass(frozen=True)
class TheoryReport:
    A_hat: np.ndarray
    theta0_hat: np.ndarray
    gamma_beta_hat: float
    sign_agreement: float
    cif_bound: float


def ustat_A(X, y) -> np.ndarray:
    """Mean of 1{y_j <= y_i} x_i over ordered pairs i != j.

    Uses the rank identity sum_{j != i} 1{y_j <= y_i} = R_i - 1, which holds
    for ties as well, giving O(n log n + n p) cost.
    """
    mat = np.asarray(X, dtype=np.float64)
    if mat.ndim != 2:
        raise InvalidInputError("X must be a 2-d matrix")
    n = mat.shape[0]
    if n < 2:
        raise InvalidInputError("need at least two observations")
    r = ranks(y).astype(np.float64)
    return mat.T @ (r - 1.0) / (n * (n - 1.0))


def theta0(H, mu, n: int) -> np.ndarray:
    """Population minimizer ((n-1)/n) H^{-1} mu of the expected rank objective."""
    Hm = np.asarray(H, dtype=np.float64)
    m = np.asarray(mu, dtype=np.float64)
    if n < 2:
        raise InvalidInputError("n must be at least 2")
    # Cholesky doubles as the SPD check
    np.linalg.cholesky(Hm)
    return (n - 1.0) / n * np.linalg.solve(Hm, m)


def _empirical_cdf_values(y: np.ndarray) -> np.ndarray:
    # F_hat(y_i) over the sample itself equals R_i / n
    return ranks(y) / y.shape[0]


def gamma_beta_mc(model: PopulationModel, link: Link, noise: Noise, n_mc: int,
                  n: int | None = None, seed: int = 0,
                  batches: int = 50) -> MonteCarloEstimate:
    """Monte-Carlo estimate of gamma_beta = ((n-1)/n) Cov(F(Y), beta'X) / (beta'H beta).

    X is drawn from N(0, H), under which beta'X ~ N(0, beta'H beta) is the
    only functional of X that enters.  F is the empirical CDF of the
    Monte-Carlo sample; the standard error comes from independent batches,
    each with its own empirical CDF.  When `n` is omitted the (n-1)/n factor
    defaults to the Monte-Carlo sample size.
    """
    if n_mc < 100:
        raise InvalidInputError("n_mc must be at least 100")
    if batches < 2 or n_mc // batches < 2:
        raise InvalidInputError("need at least 2 batches of at least 2 draws")
    rng = np.random.default_rng(np.random.SeedSequence((int(seed), 0x67616d)))
    quad = float(model.beta @ model.H @ model.beta)
    z = rng.normal(0.0, math.sqrt(quad), size=n_mc)
    eps = noise(rng, n_mc)
    y = np.asarray(link(z, eps), dtype=np.float64)
    factor = (n - 1.0) / n if n is not None else (n_mc - 1.0) / n_mc

    def estimate(zs: np.ndarray, ys: np.ndarray) -> float:
        f = _empirical_cdf_values(ys)
        cov = float(np.mean(f * zs) - np.mean(f) * np.mean(zs))
        return factor * cov / quad

    full = estimate(z, y)
    size = n_mc // batches
    vals = np.array([estimate(z[k * size:(k + 1) * size], y[k * size:(k + 1) * size])
                     for k in range(batches)])
    se = float(np.std(vals, ddof=1) / math.sqrt(batches))
    return MonteCarloEstimate(value=full, se=se, n_mc=n_mc)


def theta0_mc(model: PopulationModel, link: Link, noise: Noise, n_mc: int,
              n: int, seed: int = 0, batches: int = 20) -> Theta0Estimate:
    """Monte-Carlo theta0: plug the U-statistic estimate of mu into theta0.

    Draws X ~ N(0, H), forms Y through the link, estimates mu by the
    pairwise U-statistic and solves H theta = mu.  Componentwise standard
    errors come from independent batches.
    """
    if n_mc < 100:
        raise InvalidInputError("n_mc must be at least 100")
    if batches < 2 or n_mc // batches < 2:
        raise InvalidInputError("need at least 2 batches of at least 2 draws")
    rng = np.random.default_rng(np.random.SeedSequence((int(seed), 0x746830)))
    p = model.beta.shape[0]
    chol = np.linalg.cholesky(model.H)
    X = rng.standard_normal((n_mc, p)) @ chol.T
    eps = noise(rng, n_mc)
    y = np.asarray(link(X @ model.beta, eps), dtype=np.float64)
    mu_hat = ustat_A(X, y)
    value = theta0(model.H, mu_hat, n)
    size = n_mc // batches
    vals = np.empty((batches, p))
    for k in range(batches):
        sl = slice(k * size, (k + 1) * size)
        vals[k] = theta0(model.H, ustat_A(X[sl], y[sl]), n)
    se = np.std(vals, axis=0, ddof=1) / math.sqrt(batches)
    return Theta0Estimate(value=value, se=se, n_mc=n_mc)


def cif_lower_bound_equicorr(p0: int, b: float, xi: float, q: float) -> float:
    """Analytic lower bound (1+xi)^{-1} p0^{1/q-1/2} (1-b) for equicorrelated H."""
    if p0 < 1:
        raise InvalidInputError("p0 must be positive")
    if not 0.0 <= b < 1.0:
        raise InvalidInputError("b must lie in [0, 1)")
    if xi <= 1.0:
        raise InvalidInputError("xi must exceed 1")
    if q < 2.0:
        raise InvalidInputError("q must be at least 2")
    inv_q = 0.0 if math.isinf(q) else 1.0 / q
    return (1.0 + xi) ** -1 * p0 ** (inv_q - 0.5) * (1.0 - b)


def _lq_norm(v: np.ndarray, q: float) -> float:
    if math.isinf(q):
        return float(np.max(np.abs(v)))
    return float(np.sum(np.abs(v) ** q) ** (1.0 / q))


def cif_empirical(H, T, xi: float, q: float, n_samples: int = 20_000,
                  seed: int = 0, refine_steps: int = 400) -> float:
    """Randomized upper bound on the cone invertibility factor.

    Minimizes p0^{1/q} |H theta|_inf / |theta|_q over the cone
    |theta_{T'}|_1 <= xi |theta_T|_1 by direction sampling plus local
    coordinate refinement.  Returns the best (smallest) sampled value, which
    upper-bounds the true infimum.  Refuses p > 20: this is a desk-scale
    oracle, not a solver.
    """
    Hm = np.asarray(H, dtype=np.float64)
    p = Hm.shape[0]
    if p > 20:
        raise InvalidInputError("cif_empirical is limited to p <= 20")
    if xi <= 1.0:
        raise InvalidInputError("xi must exceed 1")
    if q < 1.0:
        raise InvalidInputError("q must be at least 1")
    T_idx = np.asarray(sorted(int(j) for j in T), dtype=np.int64)
    if T_idx.size == 0 or T_idx.min() < 0 or T_idx.max() >= p:
        raise InvalidInputError("T must be a nonempty subset of feature indices")
    mask_T = np.zeros(p, dtype=bool)
    mask_T[T_idx] = True
    p0 = int(T_idx.size)
    scale = p0 ** (0.0 if math.isinf(q) else 1.0 / q)

    def objective(theta: np.ndarray) -> float:
        denom = _lq_norm(theta, q)
        if denom == 0.0:
            return np.inf
        return scale * float(np.max(np.abs(Hm @ theta))) / denom

    def project(theta: np.ndarray) -> np.ndarray:
        # rescale the off-support block onto the cone boundary if it escapes
        on = float(np.sum(np.abs(theta[mask_T])))
        off = float(np.sum(np.abs(theta[~mask_T])))
        if off > xi * on:
            if on == 0.0:
                theta = theta.copy()
                theta[~mask_T] = 0.0
                return theta
            theta = theta.copy()
            theta[~mask_T] *= xi * on / off
        return theta

    rng = np.random.default_rng(np.random.SeedSequence((int(seed), 0x636966)))
    best = np.zeros(p)
    best[T_idx] = 1.0
    best_val = objective(best)
    for _ in range(n_samples):
        theta = np.zeros(p)
        on = rng.standard_normal(p0)
        theta[T_idx] = on / np.sum(np.abs(on))
        if p0 < p:
            off = rng.standard_normal(p - p0)
            theta[~mask_T] = rng.uniform(0.0, xi) * off / np.sum(np.abs(off))
        val = objective(theta)
        if val < best_val:
            best_val, best = val, theta
    step = 0.5
    for k in range(refine_steps):
        trial = project(best + step * rng.standard_normal(p))
        val = objective(trial)
        if val < best_val:
            best_val, best = val, trial
        step *= 0.99
    return best_val


def grad_decomposition_check(X, y, theta) -> float:
    """Max componentwise gap between the two gradient forms of the rank objective.

    Form one differentiates (1/2n) sum (R_i/n - 1/2 - theta'x_i)^2 directly;
    form two rewrites the rank-weighted sum through the pairwise U-statistic.
    The two are algebraically identical, so the gap is pure float noise.
    """
    mat = np.asarray(X, dtype=np.float64)
    if mat.ndim != 2:
        raise InvalidInputError("X must be a 2-d matrix")
    n = mat.shape[0]
    th = np.asarray(theta, dtype=np.float64)
    if th.shape != (mat.shape[1],):
        raise InvalidInputError("theta length must match design columns")
    r = ranks(y).astype(np.float64)
    col_sum = mat.sum(axis=0)
    direct = (-mat.T @ r / n ** 2 + col_sum / (2.0 * n)
              + mat.T @ (mat @ th) / n)
    A = ustat_A(mat, y)
    via_ustat = (-(n - 1.0) / n * A + (n - 2.0) / (2.0 * n ** 2) * col_sum
                 + mat.T @ (mat @ th) / n)
    return float(np.max(np.abs(direct - via_ustat)))


def theory_report(model: PopulationModel, link: Link, noise: Noise, n_mc: int,
                  n: int, seed: int = 0) -> TheoryReport:
    """Bundle the Monte-Carlo oracles into one report (CLI `theory-check`)."""
    rng = np.random.default_rng(np.random.SeedSequence((int(seed), 0x726570)))
    p = model.beta.shape[0]
    chol = np.linalg.cholesky(model.H)
    X = rng.standard_normal((n_mc, p)) @ chol.T
    y = np.asarray(link(X @ model.beta, noise(rng, n_mc)), dtype=np.float64)
    A_hat = ustat_A(X, y)
    theta0_hat = theta0(model.H, A_hat, n)
    gamma = gamma_beta_mc(model, link, noise, n_mc=n_mc, n=n, seed=seed)
    T_idx = model.support
    signs_match = np.sign(theta0_hat[T_idx]) == np.sign(model.beta[T_idx])
    agreement = float(np.mean(signs_match)) if T_idx.size else 1.0
    off_diag = model.H[~np.eye(p, dtype=bool)]
    b = float(np.max(np.abs(off_diag))) if off_diag.size else 0.0
    bound = cif_lower_bound_equicorr(max(model.p0, 1), min(b, 0.999), xi=3.0, q=2.0)
    return TheoryReport(A_hat=A_hat, theta0_hat=theta0_hat,
                        gamma_beta_hat=gamma.value, sign_agreement=agreement,
                        cif_bound=bound)
