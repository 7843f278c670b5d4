#!/usr/bin/env python

"""Tests for `ratiosparse` package."""

import pytest
import numpy as np

from scipy.optimize import Bounds

from ratiosparse.exceptions import (DegenerateInstanceError, ParameterError,
                                    RankError)
from ratiosparse.instances import (Instance, SensingMatrix, gen_dct,
                                   gen_sparse_signal, toy_instance,
                                   toy_solution)
from ratiosparse.math import l1_norm, objective, shrink
from ratiosparse.solvers import (Init, ProjectionCache, SolverConfig, Status,
                                 best_report, project_affine, solve,
                                 solve_l1_init, solve_multi_start, y_update,
                                 z_update)
from ratiosparse.solvers.utils import from_bounds


@pytest.fixture
def dct_instance():
    matrix = gen_dct(32, 256, 5., seed=42)
    truth = gen_sparse_signal(256, 3, seed=42)
    return Instance.from_truth(matrix, truth)


def test_project_affine_examples():

    cache = ProjectionCache(np.array([[1., 1.]]), np.array([2.]))

    np.testing.assert_allclose(project_affine(cache, np.zeros(2)), [1., 1.])
    np.testing.assert_allclose(project_affine(cache, [3., -1.]), [3., -1.])


@pytest.mark.parametrize("seed", [0, 42, 8888])
def test_projection_cache(seed):

    m, n = 16, 40
    random_state = np.random.RandomState(seed)
    A = random_state.randn(m, n)
    b = random_state.randn(m)
    f = random_state.randn(n)

    cache = ProjectionCache(A, b)
    x = project_affine(cache, f)

    assert np.linalg.norm(A @ x - b) <= 1e-10 * (1. + np.linalg.norm(b))
    np.testing.assert_allclose(project_affine(cache, x), x, atol=1e-10)

    P = cache.projector
    np.testing.assert_allclose(P, P.T, atol=1e-10)
    np.testing.assert_allclose(P @ P, P, atol=1e-10)
    np.testing.assert_allclose(P @ f + cache.offset, x, atol=1e-10)

    # nearest feasible point: the correction is orthogonal to the kernel
    np.testing.assert_allclose(P @ (f - x), 0., atol=1e-10)


def test_projection_cache_rank_deficient():

    A = np.array([[1., 2., 3.], [2., 4., 6.]])

    with pytest.raises(RankError):
        ProjectionCache(A, np.ones(2))

    with pytest.raises(np.linalg.LinAlgError):
        ProjectionCache(A, np.ones(2))

    with pytest.raises(RankError):
        ProjectionCache(np.ones((3, 2)), np.ones(3))


def test_y_update_examples():

    d = np.array([.3, -2., 5.])
    np.testing.assert_array_equal(y_update(0., d, 3.), d)

    e1 = np.array([1., 0., 0.])
    np.testing.assert_allclose(y_update(1., e1, 1.),
                               1.465571231876768 * e1)

    y = y_update(8., np.zeros(5), 1., random_state=42)
    np.testing.assert_allclose(np.linalg.norm(y), 2.)
    np.testing.assert_array_equal(
        y, y_update(8., np.zeros(5), 1., random_state=42))


@pytest.mark.parametrize("seed", [0, 42, 8888])
def test_y_update_stationarity(seed):

    random_state = np.random.RandomState(seed)
    d = random_state.randn(10)
    c, rho1 = 7., 2.

    y = y_update(c, d, rho1)

    # gradient of c / ||y|| + rho1 / 2 ||y - d||^2 vanishes
    grad = - c * y / np.linalg.norm(y)**3 + rho1 * (y - d)
    np.testing.assert_allclose(grad, 0., atol=1e-10)


@pytest.mark.parametrize("scale", [1e-40, 1e-60, 1e-100, 1e-300])
def test_y_update_tiny_d(scale):

    d = np.array([scale, 0.])
    y = y_update(1., d, 1.)

    np.testing.assert_allclose(y, [1., 0.])


def test_y_update_invalid():

    with pytest.raises(ParameterError):
        y_update(1., np.ones(2), 0.)

    with pytest.raises(ParameterError):
        y_update(-1., np.ones(2), 1.)


def test_z_update():

    np.testing.assert_array_equal(z_update(np.array([2., -.5]), 1.,
                                           box=(-1., 1.)), [1., 0.])

    random_state = np.random.RandomState(8888)
    r = 3. * random_state.randn(10**4)
    nu = .7

    np.testing.assert_array_equal(z_update(r, nu), shrink(r, nu))

    # the closed form for a symmetric box
    d = 1.
    z_expected = np.sign(r) * np.minimum(np.maximum(np.abs(r) - nu, 0.), d)
    np.testing.assert_allclose(z_update(r, nu, box=(-d, d)), z_expected)

    with pytest.raises(ParameterError):
        z_update(r, nu, box=(1., 1.))


def test_from_bounds():

    assert from_bounds(None) is None

    low, high = from_bounds((-1., 2.), dim=3)
    np.testing.assert_array_equal(low, [-1., -1., -1.])
    np.testing.assert_array_equal(high, [2., 2., 2.])

    low, high = from_bounds(Bounds([0., -1.], [1., 1.]))
    np.testing.assert_array_equal(low, [0., -1.])
    np.testing.assert_array_equal(high, [1., 1.])

    for bounds in [(1., 0.), (0., np.nan), 3., (1., 2., 3.)]:
        with pytest.raises(ParameterError):
            from_bounds(bounds)


def test_solver_config_invalid():

    for kwargs in [dict(rho1=0.), dict(rho2=-1.), dict(eps=0.),
                   dict(max_iter=0), dict(log_every=0),
                   dict(init=Init.EXPLICIT),
                   dict(x0=np.zeros(3))]:
        with pytest.raises(ParameterError):
            SolverConfig(**kwargs)


def test_solver_config_with_start():

    config = SolverConfig(seed=3).with_start(np.ones(4))

    assert config.init is Init.EXPLICIT
    assert config.seed == 3
    np.testing.assert_array_equal(config.x0, np.ones(4))
    assert config.with_start(np.ones(4), seed=7).seed == 7


def test_solve_toy():

    instance = toy_instance()
    config = SolverConfig(rho1=1., rho2=1., max_iter=20000, seed=0,
                          init=Init.EXPLICIT, x0=toy_solution(.5))

    report = solve(instance, config)

    assert instance.relative_error(report.x) <= 1e-3
    np.testing.assert_allclose(report.fun, 78. / np.sqrt(2324.), rtol=1e-3)

    if report.status is Status.CONVERGED:
        tol = 1e-5 * (1. + np.linalg.norm(report.x))
        assert report.residual_y[-1] <= tol
        assert report.residual_z[-1] <= tol


def test_solve_degenerate():

    instance = Instance(matrix=SensingMatrix(np.eye(2, 3)), rhs=np.zeros(2))

    with pytest.raises(DegenerateInstanceError):
        solve(instance)


@pytest.mark.parametrize("box", [None, (-1., 1.)])
def test_solve_report(dct_instance, box):

    config = SolverConfig(box=box, max_iter=300, seed=0)
    report = solve(dct_instance, config)

    assert report.status in (Status.CONVERGED, Status.MAX_ITER)
    assert report.success == (report.status is Status.CONVERGED)
    assert report.solution is report.x
    assert report.iterations == report.nit <= 300

    for key in ("objective_history", "feasibility_history", "residual_y",
                "residual_z", "rel_change_history"):
        assert len(report[key]) == report.nit

    # every x iterate is an exact projection
    b_norm = np.linalg.norm(dct_instance.b)
    assert np.all(report.feasibility_history <= 1e-8 * (1. + b_norm))

    assert 1. <= report.fun <= np.sqrt(dct_instance.matrix.cols)

    if box is not None:
        assert np.all(report.final_z >= -1.)
        assert np.all(report.final_z <= 1.)

    frame = report.history_frame()
    assert frame.index.name == "iter"
    assert list(frame.columns) == ["objective", "feasibility", "res_y",
                                   "res_z", "rel_change"]
    assert frame.index[0] == 1 and len(frame) == report.nit


@pytest.mark.parametrize("init", [Init.L1_BASIS_PURSUIT, Init.LEAST_NORM])
def test_solve_deterministic(dct_instance, init):

    config = SolverConfig(init=init, max_iter=100, seed=8888)

    a = solve(dct_instance, config)
    b = solve(dct_instance, config)

    np.testing.assert_array_equal(a.x, b.x)
    np.testing.assert_array_equal(a.objective_history, b.objective_history)


@pytest.mark.parametrize("seed", range(20))
def test_solve_feasibility(seed):

    matrix = gen_dct(64, 1024, 5., seed=seed)
    instance = Instance.from_truth(matrix,
                                   gen_sparse_signal(1024, 5, seed=seed))
    report = solve(instance, SolverConfig(box=(-1., 1.), max_iter=50,
                                          seed=seed))

    b_norm = np.linalg.norm(instance.b)
    assert np.all(report.feasibility_history <= 1e-8 * (1. + b_norm))


def test_solve_explicit_x0_shape(dct_instance):

    config = SolverConfig(init=Init.EXPLICIT, x0=np.zeros(3))

    with pytest.raises(ParameterError):
        solve(dct_instance, config)


def test_multi_start(dct_instance):

    num_starts = 3
    messages = []

    results = solve_multi_start(dct_instance, SolverConfig(max_iter=50),
                                num_starts=num_starts, random_state=42,
                                print_fn=messages.append)

    assert len(results) == num_starts
    assert len(messages) == num_starts
    assert messages[0].startswith("[Start 01: objective=")

    res_best = best_report(results)
    assert res_best.fun == min(res.fun for res in results)

    assert best_report(results, filter_fn=lambda res: False) is None


def test_solve_l1_init_toy():

    x = solve_l1_init(toy_instance())

    np.testing.assert_allclose(l1_norm(x), 32., rtol=1e-5)
    np.testing.assert_allclose(x, toy_solution(10.), atol=1e-3)


@pytest.mark.parametrize("seed", [0, 42, 8888])
def test_solve_l1_init_minimizer(seed):

    random_state = np.random.RandomState(seed)
    A = random_state.randn(4, 8)
    x_feasible = random_state.randn(8)
    instance = Instance(matrix=SensingMatrix(A), rhs=A @ x_feasible)

    x = solve_l1_init(instance)

    assert np.linalg.norm(A @ x - instance.b) \
        <= 1e-8 * (1. + np.linalg.norm(instance.b))
    assert l1_norm(x) <= l1_norm(x_feasible) + 1e-6


@pytest.mark.slow
def test_solve_success_rate():

    successes = 0
    for k in range(20):
        matrix = gen_dct(64, 1024, 5., seed=k)
        instance = Instance.from_truth(
            matrix, gen_sparse_signal(1024, 2, seed=10**6 + k))
        report = solve(instance, SolverConfig(box=(-1., 1.),
                                              seed=2 * 10**6 + k))
        successes += instance.relative_error(report.x) <= 1e-3
        assert 1. <= objective(report.x)

        if report.status is Status.CONVERGED:
            tol = 1e-5 * (1. + np.linalg.norm(report.x))
            assert report.residual_y[-1] <= tol
            assert report.residual_z[-1] <= tol

    assert successes >= 18
