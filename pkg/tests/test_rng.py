#!/usr/bin/env python

"""Tests for `ratiosparse` package."""

import pytest
import numpy as np

from ratiosparse.exceptions import ParameterError
from ratiosparse.rng import MAX_SEED, check_random_state, random_direction


@pytest.mark.parametrize("seed", [0, 42, 8888, MAX_SEED])
def test_check_random_state_reproducible(seed):

    a = check_random_state(seed).standard_normal(10)
    b = check_random_state(seed).standard_normal(10)

    np.testing.assert_array_equal(a, b)
    assert isinstance(check_random_state(seed).bit_generator,
                      np.random.Philox)


def test_check_random_state_key():
    # keyed directly, with no seed hashing
    state = check_random_state(42).bit_generator.state["state"]
    assert state["key"][0] == 42
    np.testing.assert_array_equal(state["counter"], 0)


def test_check_random_state_passthrough():

    random_state = np.random.Generator(np.random.Philox(key=1))
    assert check_random_state(random_state) is random_state
    assert isinstance(check_random_state(None), np.random.Generator)


@pytest.mark.parametrize("seed", [-1, MAX_SEED + 1, 1.5, "0"])
def test_check_random_state_invalid(seed):
    with pytest.raises(ParameterError):
        check_random_state(seed)


@pytest.mark.parametrize("seed", [0, 42, 8888])
def test_random_direction(seed):

    u = random_direction((3, 4), random_state=seed)

    assert u.shape == (3, 4)
    np.testing.assert_allclose(np.linalg.norm(u), 1.)
    np.testing.assert_array_equal(u, random_direction((3, 4), seed))
