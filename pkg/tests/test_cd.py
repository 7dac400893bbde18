import numpy as np
import pytest

from ranklasso import (DegenerateColumnError, InvalidInputError,
                       NonConvergedError, PenaltySpec, fit_weighted_lasso,
                       lambda_max, lambda_path, standardize)
from ranklasso.cd import penalized_objective
from oracles import brute_weighted_lasso


def soft(x, t):
    return np.sign(x) * np.maximum(np.abs(x) - t, 0.0)


def random_instance(rng, n=None, p=None):
    n = n or int(rng.integers(5, 31))
    p = p or int(rng.integers(1, 4))
    X = rng.standard_normal((n, p))
    r = rng.standard_normal(n)
    lam = float(rng.uniform(0.01, 0.5))
    weights = rng.uniform(0.5, 2.0, size=p)
    return X, r, lam, weights


class TestStandardize:
    def test_already_standard(self):
        d = standardize(np.array([[1.0], [-1.0]]))
        np.testing.assert_allclose(d.data, [[1.0], [-1.0]])

    def test_shift_and_scale(self):
        d = standardize(np.array([[2.0], [4.0]]))
        np.testing.assert_allclose(d.data, [[-1.0], [1.0]])
        assert d.column_means[0] == 3.0

    def test_zero_variance_named(self):
        with pytest.raises(DegenerateColumnError, match="column 1"):
            standardize(np.array([[1.0, 7.0], [2.0, 7.0]]))

    def test_moments_after_standardization(self):
        rng = np.random.default_rng(0)
        d = standardize(rng.uniform(0, 9, size=(37, 5)))
        np.testing.assert_allclose(d.data.mean(axis=0), 0, atol=1e-12)
        np.testing.assert_allclose((d.data ** 2).mean(axis=0), 1, atol=1e-12)

    def test_backmap(self):
        rng = np.random.default_rng(1)
        X = rng.uniform(1, 5, size=(20, 3))
        d = standardize(X)
        theta = np.array([1.0, -2.0, 0.5])
        np.testing.assert_allclose((X - d.column_means) @ d.backmap(theta),
                                   d.data @ theta)


class TestFit:
    def test_zero_at_lambda_max(self):
        rng = np.random.default_rng(2)
        X = rng.standard_normal((25, 6))
        r = rng.standard_normal(25)
        lam = lambda_max(X, r)
        fit = fit_weighted_lasso(X, r, PenaltySpec(lam=lam, weights=np.ones(6)))
        assert fit.support.size == 0
        assert fit.max_kkt_violation <= 1e-7

    def test_lambda_zero_is_least_squares(self):
        rng = np.random.default_rng(3)
        X = rng.standard_normal((30, 4))
        r = rng.standard_normal(30)
        fit = fit_weighted_lasso(X, r, PenaltySpec(lam=0.0, weights=np.ones(4)))
        ls = np.linalg.lstsq(X, r, rcond=None)[0]
        np.testing.assert_allclose(fit.coefficients, ls, atol=1e-6)

    def test_orthonormal_closed_form(self):
        rng = np.random.default_rng(4)
        n, p = 32, 5
        q, _ = np.linalg.qr(rng.standard_normal((n, p)))
        X = q * np.sqrt(n)  # X'X/n = I
        r = rng.standard_normal(n)
        w = rng.uniform(0.5, 2.0, size=p)
        lam = 0.08
        fit = fit_weighted_lasso(X, r, PenaltySpec(lam=lam, weights=w))
        expected = soft(X.T @ r / n, lam * w)
        np.testing.assert_allclose(fit.coefficients, expected, atol=1e-7)

    def test_orthonormal_against_grid_search_p2(self):
        rng = np.random.default_rng(5)
        n = 24
        q, _ = np.linalg.qr(rng.standard_normal((n, 2)))
        X = q * np.sqrt(n)
        r = rng.standard_normal(n)
        lam, w = 0.1, np.ones(2)
        fit = fit_weighted_lasso(X, r, PenaltySpec(lam=lam, weights=w))
        _, brute_obj = brute_weighted_lasso(X, r, lam, w)
        got_obj = penalized_objective(X, r, fit.coefficients, lam, w)
        assert got_obj <= brute_obj + 1e-9

    def test_matches_brute_force_random(self):
        rng = np.random.default_rng(6)
        for _ in range(15):
            X, r, lam, w = random_instance(rng)
            fit = fit_weighted_lasso(X, r, PenaltySpec(lam=lam, weights=w))
            _, brute_obj = brute_weighted_lasso(X, r, lam, w)
            got = penalized_objective(X, r, fit.coefficients, lam, w)
            assert got <= brute_obj + 1e-6
            assert fit.max_kkt_violation <= 1e-7

    def test_excluded_features_stay_out(self):
        rng = np.random.default_rng(7)
        X = rng.standard_normal((40, 6))
        beta = np.array([2.0, 0, 0, 0, 0, 1.5])
        r = X @ beta + 0.1 * rng.standard_normal(40)
        w = np.ones(6)
        w[[0, 5]] = np.inf
        fit = fit_weighted_lasso(X, r, PenaltySpec(lam=0.01, weights=w))
        assert 0 not in fit.support
        assert 5 not in fit.support

    def test_warm_vs_cold(self):
        rng = np.random.default_rng(8)
        tol = 1e-9
        for _ in range(10):
            X, r, lam, w = random_instance(rng, n=40, p=3)
            cold = fit_weighted_lasso(X, r, PenaltySpec(lam=lam, weights=w),
                                      tol=tol)
            warm = fit_weighted_lasso(X, r, PenaltySpec(lam=lam, weights=w),
                                      tol=tol,
                                      warm_start=rng.standard_normal(3))
            np.testing.assert_allclose(cold.coefficients, warm.coefficients,
                                       atol=10 * tol)

    def test_objective_non_increasing_over_sweeps(self):
        # correlated design so descent takes multiple sweeps
        rng = np.random.default_rng(9)
        z = rng.standard_normal((50, 1))
        X = 0.9 * z + 0.4 * rng.standard_normal((50, 8))
        r = rng.standard_normal(50)
        lam, w = 0.01, np.ones(8)
        objs = []
        for k in range(1, 12):
            try:
                fit = fit_weighted_lasso(X, r, PenaltySpec(lam=lam, weights=w),
                                         tol=1e-14, max_iter=k)
                theta = fit.coefficients
            except NonConvergedError as exc:
                theta = exc.coefficients
            objs.append(penalized_objective(X, r, theta, lam, w))
        assert all(b <= a + 1e-12 for a, b in zip(objs, objs[1:]))

    def test_non_convergence_carries_iterate(self):
        rng = np.random.default_rng(10)
        X = rng.standard_normal((30, 5))
        r = rng.standard_normal(30)
        with pytest.raises(NonConvergedError) as err:
            fit_weighted_lasso(X, r, PenaltySpec(lam=1e-4, weights=np.ones(5)),
                               tol=1e-12, max_iter=1)
        assert err.value.coefficients.shape == (5,)
        assert err.value.violation > 0

    def test_rejects_bad_inputs(self):
        X = np.eye(4)
        r = np.ones(4)
        with pytest.raises(InvalidInputError):
            fit_weighted_lasso(X, r, PenaltySpec(lam=0.1, weights=np.ones(3)))
        with pytest.raises(InvalidInputError):
            fit_weighted_lasso(X, r, PenaltySpec(lam=0.1, weights=np.ones(4)),
                               tol=0.0)
        with pytest.raises(InvalidInputError):
            PenaltySpec(lam=-0.1, weights=np.ones(4))
        with pytest.raises(InvalidInputError):
            PenaltySpec(lam=0.1, weights=np.array([1.0, 0.0]))


class TestPath:
    def test_first_entry_empty_at_lambda_max(self):
        rng = np.random.default_rng(11)
        X = rng.standard_normal((30, 8))
        r = rng.standard_normal(30)
        lam_max = lambda_max(X, r)
        fits = lambda_path(X, r, np.ones(8), [lam_max, lam_max / 2])
        assert fits[0].support.size == 0

    def test_single_lambda_equals_direct(self):
        rng = np.random.default_rng(12)
        X = rng.standard_normal((25, 4))
        r = rng.standard_normal(25)
        w = np.ones(4)
        direct = fit_weighted_lasso(X, r, PenaltySpec(lam=0.05, weights=w))
        path = lambda_path(X, r, w, [0.05])
        np.testing.assert_array_equal(direct.coefficients, path[0].coefficients)

    def test_warm_path_matches_cold(self):
        rng = np.random.default_rng(13)
        tol = 1e-9
        X = rng.standard_normal((40, 6))
        r = rng.standard_normal(40)
        w = np.ones(6)
        lams = np.geomspace(lambda_max(X, r), 1e-3, 12)
        fits = lambda_path(X, r, w, lams, tol=tol)
        for lam, fit in zip(lams, fits):
            cold = fit_weighted_lasso(X, r, PenaltySpec(lam=float(lam), weights=w),
                                      tol=tol)
            np.testing.assert_allclose(fit.coefficients, cold.coefficients,
                                       atol=10 * tol)

    def test_path_validation(self):
        X = np.eye(4)
        r = np.ones(4)
        with pytest.raises(InvalidInputError):
            lambda_path(X, r, np.ones(4), [0.1, 0.2])
        with pytest.raises(InvalidInputError):
            lambda_path(X, r, np.ones(4), [])
        with pytest.raises(InvalidInputError):
            lambda_path(X, r, np.ones(4), [0.1, -0.5])


def test_lambda_max_with_weights():
    rng = np.random.default_rng(14)
    X = rng.standard_normal((20, 3))
    r = rng.standard_normal(20)
    w = np.array([2.0, np.inf, 0.5])
    grad = np.abs(X.T @ r) / 20
    assert lambda_max(X, r, w) == pytest.approx(max(grad[0], grad[2]) / 0.5)
    with pytest.raises(InvalidInputError):
        lambda_max(X, r, np.full(3, np.inf))
