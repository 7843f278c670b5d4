#!/usr/bin/env python

"""Tests for `ratiosparse` package."""

import pytest
import numpy as np

from scipy.optimize import bisect

from ratiosparse.exceptions import ParameterError
from ratiosparse.math import (l1_norm, objective, relative_error, shrink,
                              solve_cubic_tau)


@pytest.fixture
def D_grid():
    return np.concatenate([[0.], np.logspace(-8, 8, 999)])


def test_objective_examples():

    e1 = np.zeros(7)
    e1[0] = 1.

    assert objective(e1) == 1.
    np.testing.assert_allclose(objective(np.ones(9)), 3.)
    assert objective(np.zeros(4)) == 0.


@pytest.mark.parametrize("seed", [0, 42, 8888])
def test_objective_bounds_and_scale_invariance(seed):

    n = 50
    random_state = np.random.RandomState(seed)
    x = random_state.randn(n)

    f = objective(x)
    assert 1. <= f <= np.sqrt(n)

    for alpha in (-3., 1e-150, 1e150):
        np.testing.assert_allclose(objective(alpha * x), f, rtol=1e-14)


def test_objective_one_sparse():
    x = np.zeros(10)
    x[3] = -2.5
    assert objective(x) == 1.


def test_shrink():

    np.testing.assert_array_equal(shrink(np.array([2., -.5, 0.]), 1.),
                                  [1., 0., 0.])
    np.testing.assert_array_equal(shrink(np.array([3.]), 1.), [2.])

    v = np.random.RandomState(8888).randn(20)
    np.testing.assert_array_equal(shrink(v, 0.), v)

    with pytest.raises(ParameterError):
        shrink(v, -1.)


def test_solve_cubic_tau_residual(D_grid):

    tau = solve_cubic_tau(D_grid)

    assert tau.shape == D_grid.shape
    assert np.all(tau >= 1.)
    assert np.all(np.diff(tau) > 0.)

    residual = np.abs(tau**3 - tau**2 - D_grid)
    assert np.all(residual <= 1e-10 * np.maximum(1., D_grid))


def test_solve_cubic_tau_bisection(D_grid):

    for D in D_grid:
        tau_expected = bisect(lambda tau: tau**2 * (tau - 1.) - D,
                              1., 2. + np.cbrt(D), xtol=1e-15, rtol=1e-15)
        np.testing.assert_allclose(solve_cubic_tau(D), tau_expected,
                                   rtol=1e-9)


def test_solve_cubic_tau_examples():

    assert solve_cubic_tau(0.) == 1.
    np.testing.assert_allclose(solve_cubic_tau(1.), 1.465571231876768)

    with pytest.raises(ParameterError):
        solve_cubic_tau(-1e-3)

    with pytest.raises(ParameterError):
        solve_cubic_tau(np.nan)


@pytest.mark.parametrize("D", [1e140, 1e160, 1e200, 1e300])
def test_solve_cubic_tau_huge(D):

    tau = solve_cubic_tau(D)

    assert np.isfinite(tau)
    np.testing.assert_allclose(tau, np.cbrt(D) + 1. / 3., rtol=1e-12)
    np.testing.assert_allclose(tau**2 * (tau - 1.), D, rtol=1e-12)


def test_relative_error():

    x = np.array([3., 4.])

    assert relative_error(x, x) == 0.
    np.testing.assert_allclose(relative_error(np.zeros(2), x), 1.)
    # absolute error against zero
    np.testing.assert_allclose(relative_error(x, np.zeros(2)), 5.)
    assert l1_norm(-x) == 7.
