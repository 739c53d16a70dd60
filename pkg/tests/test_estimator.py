import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import ConvergenceWarning, NotFittedError

from renyi_augustin import AugustinMean, bsc, identity
from renyi_augustin.augustin import solve_augustin_mean


def test_params_roundtrip():
    est = AugustinMean(alpha=2.0, tol=1e-8)
    params = est.get_params()
    assert params == {"alpha": 2.0, "beta": None, "tol": 1e-8, "max_iter": 100_000, "init": None}
    est.set_params(alpha=0.5)
    assert est.alpha == 0.5
    assert clone(est).get_params() == est.get_params()


def test_fit_matches_solver():
    P, W = np.array([0.3, 0.7]), np.array([[0.8, 0.2], [0.3, 0.7]])
    est = AugustinMean(alpha=3.0).fit(W, P)
    report = solve_augustin_mean(3.0, P, W)
    np.testing.assert_array_equal(est.mean_, report.mean)
    assert est.information_ == report.information
    assert est.converged_ and est.n_iter_ == report.iterations
    np.testing.assert_allclose(est.output_distribution_, P @ W)


def test_default_uniform_input():
    est = AugustinMean(alpha=0.5).fit(identity(4))
    assert est.information_ == pytest.approx(math.log(4), abs=1e-12)


def test_transform_gap():
    est = AugustinMean(alpha=0.5).fit(bsc(0.1), [0.5, 0.5])
    gaps = est.transform([[0.5, 0.5], [0.3, 0.7]])
    assert gaps[0] == pytest.approx(0, abs=1e-15)
    assert gaps[1] > 0
    assert est.score([[0.5, 0.5]]) == pytest.approx(0, abs=1e-15)


def test_not_fitted():
    with pytest.raises(NotFittedError):
        AugustinMean().transform([[0.5, 0.5]])


def test_convergence_warning():
    rng = np.random.default_rng(0)
    W = rng.dirichlet(np.ones(4), size=4)
    with pytest.warns(ConvergenceWarning):
        est = AugustinMean(alpha=20.0, max_iter=2).fit(W)
    assert not est.converged_


def test_bad_input():
    with pytest.raises(ValueError):
        AugustinMean().fit([[0.5, 0.6]])
    with pytest.raises(ValueError, match="order must be positive"):
        AugustinMean(alpha=-1).fit(bsc(0.1))
