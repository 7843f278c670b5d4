#!/usr/bin/env python

"""Tests for `ratiosparse` package."""

import pytest
import numpy as np

from scipy import fft

from ratiosparse.exceptions import ParameterError
from ratiosparse.imaging import (FourierMask, GradSolverConfig, back_project,
                                 div_adjoint, grad, laplacian_symbol, measure,
                                 radial_mask, shepp_logan, solve_grad,
                                 solve_tv)
from ratiosparse.imaging.operators import negate_frequencies
from ratiosparse.imaging.phantom import SHEPP_LOGAN_ELLIPSES
from ratiosparse.math import relative_error


@pytest.fixture
def phantom():
    return shepp_logan(32)


def full_mask(n, m):
    return FourierMask(np.ones((n, m), dtype=bool))


def test_grad_constant():
    np.testing.assert_array_equal(grad(np.full((5, 6), 3.)), 0.)


def test_grad_delta():

    u = np.zeros((4, 4))
    u[0, 0] = 1.

    dx, dy = grad(u)

    assert np.count_nonzero(dx) == 2
    assert dx[0, 0] == -1. and dx[0, 3] == 1.
    assert dy[0, 0] == -1. and dy[3, 0] == 1.


def test_div_adjoint():

    random_state = np.random.RandomState(8888)

    for _ in range(100):
        u = random_state.randn(8, 8)
        p = random_state.randn(2, 8, 8)

        lhs = np.sum(grad(u) * p)
        rhs = np.sum(u * div_adjoint(p))
        scale = np.linalg.norm(grad(u)) * np.linalg.norm(p)

        assert abs(lhs - rhs) <= 1e-12 * scale


def test_div_adjoint_invalid():

    with pytest.raises(ParameterError):
        div_adjoint(np.zeros((3, 8, 8)))

    with pytest.raises(ParameterError):
        grad(np.zeros(8))


@pytest.mark.parametrize("seed", [0, 42, 8888])
def test_laplacian_symbol(seed):

    n, m = 6, 10
    u = np.random.RandomState(seed).randn(n, m)

    np.testing.assert_allclose(fft.fft2(div_adjoint(grad(u))),
                               laplacian_symbol(n, m) * fft.fft2(u),
                               atol=1e-10)


@pytest.mark.parametrize("shape", [(256, 256), (64, 48), (33, 17)])
@pytest.mark.parametrize("lines", [1, 6, 8, 22])
def test_radial_mask_symmetric(shape, lines):

    mask = radial_mask(*shape, lines)

    assert mask.shape == shape
    assert mask.line_count == lines
    assert mask.has_dc()
    assert mask.is_symmetric()
    np.testing.assert_array_equal(mask.keep, negate_frequencies(mask.keep))


def test_radial_mask_fraction():

    assert .02 <= radial_mask(256, 256, 6).fraction <= .035
    assert np.sum(radial_mask(64, 48, 1).keep) <= 2 * 64

    with pytest.raises(ParameterError):
        radial_mask(8, 8, 0)


def test_fourier_mask_checks():

    keep = np.zeros((4, 4), dtype=bool)
    keep[0, 1] = True

    mask = FourierMask(keep)
    assert not mask.has_dc()
    assert not mask.is_symmetric()


@pytest.mark.parametrize("seed", [0, 42, 8888])
def test_measure(seed):

    n, m = 8, 12
    u = np.random.RandomState(seed).rand(n, m)

    f = measure(u, full_mask(n, m))
    np.testing.assert_allclose(back_project(f), u, atol=1e-12)

    # Parseval, with the unnormalized forward transform
    np.testing.assert_allclose(np.sum(np.abs(f)**2), n * m * np.sum(u**2))

    keep = np.zeros((n, m), dtype=bool)
    keep[0, 0] = True
    f = measure(u, FourierMask(keep))
    np.testing.assert_allclose(f[0, 0], np.sum(u))
    assert np.count_nonzero(f) == 1

    with pytest.raises(ParameterError):
        measure(u, full_mask(m, n))


def _reference_phantom(n):
    # one point-in-ellipse test per pixel centre
    u = np.zeros((n, n))
    centre = (n - 1) / 2.
    for i in range(n):
        for j in range(n):
            point = np.array([(j - centre) / centre, (centre - i) / centre])
            value = 0.
            for A, a, b, x0, y0, phi in SHEPP_LOGAN_ELLIPSES:
                c, s = np.cos(np.deg2rad(phi)), np.sin(np.deg2rad(phi))
                p, q = np.array([[c, s], [-s, c]]) @ (point - [x0, y0])
                if (p / a)**2 + (q / b)**2 <= 1.:
                    value += A
            u[i, j] = value
    return np.clip(u, 0., 1.)


def test_shepp_logan():

    u = shepp_logan(128)

    assert u.shape == (128, 128)
    assert np.all((u >= 0.) & (u <= 1.))
    assert u[0, 0] == u[0, -1] == u[-1, 0] == u[-1, -1] == 0.

    fraction = np.mean(u > 0.)
    fraction_expected = np.mean(_reference_phantom(128) > 0.)
    assert abs(fraction - fraction_expected) <= .02

    with pytest.raises(ParameterError):
        shepp_logan(8)


def test_grad_solver_config_invalid():

    for kwargs in [dict(lambd=0.), dict(rho1=-1.), dict(rho3=0.),
                   dict(eps=0.), dict(max_iter=0), dict(check_every=0)]:
        with pytest.raises(ParameterError):
            GradSolverConfig(**kwargs)


def test_solve_grad_invalid_data(phantom):

    n, m = phantom.shape

    keep = np.ones((n, m), dtype=bool)
    keep[0, 0] = False
    mask = FourierMask(keep)
    with pytest.raises(ParameterError):
        solve_grad(measure(phantom, mask), mask)

    keep = np.zeros((n, m), dtype=bool)
    keep[0, 0] = keep[0, 1] = True
    mask = FourierMask(keep)
    with pytest.raises(ParameterError):
        solve_grad(measure(phantom, mask), mask)

    mask = radial_mask(n, m, 4)
    with pytest.raises(ParameterError):
        solve_tv(fft.fft2(phantom), mask)


@pytest.mark.parametrize("solver_fn", [solve_grad, solve_tv])
def test_solve_full_mask(phantom, solver_fn):

    mask = full_mask(*phantom.shape)
    f = measure(phantom, mask)
    config = GradSolverConfig(rho1=10., rho2=10., eps=1e-10, max_iter=500,
                              seed=0)

    report = solver_fn(f, mask, config)

    assert relative_error(report.x, back_project(f)) <= 1e-10


@pytest.mark.parametrize("solver_fn", [solve_grad, solve_tv])
def test_solve_report(phantom, solver_fn):

    mask = radial_mask(*phantom.shape, 8)
    config = GradSolverConfig(max_iter=60, check_every=5, seed=0)
    iterates = []

    report = solver_fn(measure(phantom, mask), mask, config,
                       callback=iterates.append)

    assert report.nit == len(iterates) == 60
    assert report.x.shape == phantom.shape
    assert np.all((report.final_v >= 0.) & (report.final_v <= 1.))

    assert len(report.system_residuals) == 12
    assert np.all(report.system_residuals <= 1e-10)

    for key in ("objective_history", "feasibility_history", "residual_y",
                "residual_z", "rel_change_history"):
        assert len(report[key]) == report.nit

    assert np.all(np.isfinite(report.objective_history))
    assert np.all(report.objective_history >= 1.)
    if solver_fn is solve_tv:
        np.testing.assert_array_equal(report.residual_y, 0.)


@pytest.mark.slow
def test_solve_grad_phantom():

    u = shepp_logan(128)
    mask = radial_mask(128, 128, 8)
    f = measure(u, mask)

    report = solve_grad(f, mask, GradSolverConfig(seed=0))

    assert relative_error(report.x, u) <= 1e-3
    if report.success:
        assert report.feasibility_history[-1] <= 1e-6 * np.linalg.norm(f)


@pytest.mark.slow
def test_solve_grad_beats_tv():

    u = shepp_logan(128)
    mask = radial_mask(128, 128, 6)
    f = measure(u, mask)
    config = GradSolverConfig(seed=0)

    error_ratio = relative_error(solve_grad(f, mask, config).x, u)
    error_tv = relative_error(solve_tv(f, mask, config).x, u)

    assert 10. * error_ratio < error_tv


@pytest.mark.slow
def test_solve_tv_more_lines():

    u = shepp_logan(128)
    config = GradSolverConfig(seed=0)
    errors = []

    for lines in (6, 8, 12):
        mask = radial_mask(128, 128, lines)
        report = solve_tv(measure(u, mask), mask, config)
        errors.append(relative_error(report.x, u))

    assert errors[1] <= errors[0] and errors[2] <= errors[1]
