#!/usr/bin/env python

"""Tests for `ratiosparse` package."""

import pytest
import numpy as np

from ratiosparse.exceptions import ParameterError
from ratiosparse.instances import (GroundTruth, Instance, MatrixKind,
                                   SensingMatrix, gen_dct, gen_gaussian,
                                   gen_sparse_signal, toy_instance,
                                   toy_solution)
from ratiosparse.rng import check_random_state
from ratiosparse.theory import coherence


@pytest.mark.parametrize("seed", [0, 42, 8888])
def test_gen_dct(seed):

    m, n, F = 64, 1024, 10.
    matrix = gen_dct(m, n, F, seed=seed)

    assert matrix.shape == (m, n)
    assert matrix.kind is MatrixKind.OVERSAMPLED_DCT
    assert matrix.param == F
    assert np.all(np.abs(matrix.entries) <= 1. / np.sqrt(m) + 1e-15)

    w = check_random_state(seed).uniform(size=m)
    j = 7
    np.testing.assert_allclose(matrix.entries[:, j - 1],
                               np.cos(2. * np.pi * w * j / F) / np.sqrt(m))

    np.testing.assert_array_equal(matrix.entries,
                                  gen_dct(m, n, F, seed=seed).entries)


def test_gen_dct_coherence_grows_with_F():

    mu_low = np.mean([coherence(gen_dct(64, 1024, 1., seed=seed))
                      for seed in range(50)])
    mu_high = np.mean([coherence(gen_dct(64, 1024, 20., seed=seed))
                       for seed in range(50)])

    assert mu_high > mu_low


@pytest.mark.parametrize("r", [0., .8])
def test_gen_gaussian_covariance(r):

    n = 4
    matrix = gen_gaussian(10**4, n, r, seed=8888)

    cov_expected = np.full((n, n), r)
    np.fill_diagonal(cov_expected, 1.)

    np.testing.assert_allclose(np.cov(matrix.entries, rowvar=False),
                               cov_expected, atol=.05)


def test_gen_gaussian_shape():

    matrix = gen_gaussian(64, 1024, .8, seed=0)

    assert matrix.shape == (64, 1024)
    assert matrix.kind is MatrixKind.CORRELATED_GAUSSIAN


@pytest.mark.parametrize("kwargs", [dict(m=0, n=8, F=1.),
                                    dict(m=4, n=8, F=0.),
                                    dict(m=4, n=8.5, F=1.)])
def test_gen_dct_invalid(kwargs):
    with pytest.raises(ParameterError):
        gen_dct(**kwargs)


@pytest.mark.parametrize("r", [-.1, 1., 2.])
def test_gen_gaussian_invalid(r):
    with pytest.raises(ParameterError):
        gen_gaussian(4, 8, r)


@pytest.mark.parametrize("seed", [0, 42, 8888])
@pytest.mark.parametrize("s", [1, 5, 30])
def test_gen_sparse_signal(s, seed):

    n = 256
    truth = gen_sparse_signal(n, s, seed=seed)

    assert truth.sparsity == s
    assert len(truth.support) == s
    assert np.max(np.abs(truth.values)) == 1.
    np.testing.assert_array_equal(truth.values,
                                  gen_sparse_signal(n, s, seed=seed).values)

    if s == 1:
        assert abs(truth.values[truth.support[0]]) == 1.


@pytest.mark.parametrize("seed", [0, 42, 8888])
def test_gen_sparse_signal_min_sep(seed):

    truth = gen_sparse_signal(1024, 12, min_sep=40, seed=seed)

    assert truth.sparsity == 12
    assert truth.min_sep == 40
    assert np.all(np.diff(truth.support) >= 40)


def test_gen_sparse_signal_invalid():

    with pytest.raises(ParameterError):
        gen_sparse_signal(10, 11)

    with pytest.raises(ParameterError):
        gen_sparse_signal(100, 12, min_sep=10)

    with pytest.raises(ParameterError):
        gen_sparse_signal(100, 2, min_sep=0)


def test_toy_instance():

    instance = toy_instance()

    assert instance.matrix.shape == (5, 6)
    np.testing.assert_array_equal(instance.b, [0., 0., 20., 40., 18.])
    np.testing.assert_allclose(instance.A @ toy_solution(3.), instance.b)

    assert instance.truth.sparsity == 3
    assert np.count_nonzero(toy_solution(10.)) == 4
    assert np.count_nonzero(toy_solution(9.)) == 5


@pytest.mark.parametrize("seed", [0, 42, 8888])
def test_instance_from_truth(seed):

    matrix = gen_dct(16, 64, 5., seed=seed)
    truth = gen_sparse_signal(64, 3, seed=seed)
    instance = Instance.from_truth(matrix, truth)

    residual = np.linalg.norm(instance.A @ truth.values - instance.b)
    assert residual <= 1e-12 * np.linalg.norm(instance.b)
    assert instance.relative_error(truth.values) == 0.


def test_instance_invalid():

    matrix = SensingMatrix(np.eye(3))

    with pytest.raises(ParameterError):
        Instance(matrix=matrix, rhs=np.ones(2))

    with pytest.raises(ParameterError):
        Instance(matrix=matrix, rhs=np.ones(3),
                 truth=GroundTruth(np.zeros(3)))

    with pytest.raises(ParameterError):
        SensingMatrix(np.array([[1., np.inf]]))


def test_sensing_matrix_read_only():

    matrix = gen_dct(4, 8, 1., seed=0)

    with pytest.raises(ValueError):
        matrix.entries[0, 0] = 1.
