import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ranklasso import InvalidInputError, eval_selection, fd_tp_curve, opq


class TestEvalSelection:
    def test_paper_arithmetic(self):
        ev = eval_selection(range(10), range(4, 14), p0=10)
        assert (ev.R, ev.V, ev.S) == (10, 4, 6)
        assert ev.fdp == pytest.approx(0.4)
        assert ev.tpp == pytest.approx(0.6)
        assert ev.nmp == 8

    def test_empty_selection_guard(self):
        ev = eval_selection([], range(5), p0=5)
        assert ev.fdp == 0.0
        assert ev.nmp == 5

    def test_perfect_selection(self):
        ev = eval_selection([1, 2, 3], [1, 2, 3], p0=3)
        assert ev.fdp == 0.0 and ev.tpp == 1.0 and ev.nmp == 0

    def test_empty_truth_bookkeeping(self):
        ev = eval_selection([4, 9], [], p0=0)
        assert ev.V == 2 and ev.nmp == 2 and ev.tpp == 1.0

    @given(st.sets(st.integers(0, 40)), st.sets(st.integers(0, 40)))
    @settings(max_examples=100, deadline=None)
    def test_identities(self, support, truth):
        ev = eval_selection(sorted(support), sorted(truth), p0=len(truth))
        assert ev.S == ev.R - ev.V
        assert ev.nmp == ev.V + len(truth) - ev.S
        assert ev.fdp == ev.V / max(ev.R, 1)
        assert 0 <= ev.fdp <= 1 and 0 <= ev.tpp <= 1


class TestFdTpCurve:
    def test_true_prefix_hugs_axis(self):
        coefs = np.array([0.9, 0.8, 0.7, 0.2, 0.1])
        curve = fd_tp_curve(coefs, T=[0, 1, 2])
        assert curve.fd[:3].tolist() == [0, 0, 0]
        assert curve.tp[:3].tolist() == [1, 2, 3]

    def test_all_zero_coefficients(self):
        curve = fd_tp_curve(np.zeros(6), T=[0, 1])
        assert curve.tp.size == 0 and curve.fd.size == 0

    def test_hand_computed_mixed(self):
        # order by |coef| desc: idx 3 (0.9, FD), 0 (0.5, TP), 4 (0.4, FD),
        # 1 (0.3, TP); index 2 is zero and excluded
        coefs = np.array([0.5, -0.3, 0.0, 0.9, 0.4])
        curve = fd_tp_curve(coefs, T=[0, 1, 2])
        assert curve.pairs == [(0, 1), (1, 1), (1, 2), (2, 2)]

    def test_tie_breaks_by_index(self):
        coefs = np.array([0.5, -0.5, 0.5])
        curve = fd_tp_curve(coefs, T=[1])
        # indices visited 0, 1, 2
        assert curve.pairs == [(0, 1), (1, 1), (1, 2)]

    def test_prefix_identity_and_endpoint(self):
        rng = np.random.default_rng(0)
        coefs = rng.standard_normal(20) * (rng.random(20) > 0.3)
        T = [0, 1, 2, 3, 4]
        curve = fd_tp_curve(coefs, T)
        for k in range(curve.tp.size):
            assert curve.tp[k] + curve.fd[k] == k + 1
        support = set(np.flatnonzero(coefs).tolist())
        assert curve.tp[-1] == len(support & set(T))
        assert curve.fd[-1] == len(support - set(T))


class TestOpq:
    def test_true_coefficients_score_one(self):
        rng = np.random.default_rng(1)
        X = rng.standard_normal((20, 4))
        beta = np.array([1.0, -2.0, 0.5, 0.0])
        y = np.exp(X @ beta)  # noiseless increasing link
        assert opq(beta, X, y) == 1.0

    def test_flipped_coefficients_score_zero(self):
        rng = np.random.default_rng(2)
        X = rng.standard_normal((15, 3))
        beta = np.array([1.0, 0.5, -1.0])
        y = X @ beta
        assert opq(-beta, X, y) == 0.0

    def test_zero_estimator_scores_zero(self):
        rng = np.random.default_rng(3)
        X = rng.standard_normal((10, 3))
        y = rng.standard_normal(10)
        assert opq(np.zeros(3), X, y) == 0.0

    def test_requires_two_points(self):
        with pytest.raises(InvalidInputError):
            opq(np.ones(2), np.ones((1, 2)), np.ones(1))

    @given(st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_antisymmetry(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 30))
        X = rng.standard_normal((n, 3))
        theta = rng.standard_normal(3)
        y = rng.standard_normal(n)
        scores = X @ theta
        assume(len(np.unique(y)) == n and len(np.unique(scores)) == n)
        assert opq(theta, X, y) + opq(-theta, X, y) == pytest.approx(1.0)
