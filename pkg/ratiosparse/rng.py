"""
Seeded random streams.

Every stream in this package is a ``numpy.random.Generator`` driven by the
Philox4x64-10 counter-based bit generator, keyed *directly* with the 64-bit
seed and with the counter starting at zero. Since neither seed hashing nor
hidden state is involved, the stream for a given seed can be replicated by
any Philox implementation.
"""
import numbers

import numpy as np

from .exceptions import ParameterError

MAX_SEED = 2**64 - 1


def check_random_state(seed=None):
    """
    Turn ``seed`` into a ``numpy.random.Generator`` instance.

    Parameters
    ----------
    seed : None, int or numpy.random.Generator
        If None, a generator keyed with fresh OS entropy is returned. If an
        int, a Philox generator keyed with it. If already a Generator, it is
        returned unchanged.

    Returns
    -------
    numpy.random.Generator
    """
    if seed is None:
        return np.random.Generator(np.random.Philox())
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, numbers.Integral):
        if not 0 <= seed <= MAX_SEED:
            raise ParameterError("`seed` must be an unsigned 64-bit integer!")
        return np.random.Generator(np.random.Philox(key=int(seed)))
    raise ParameterError(f"{seed!r} cannot be used to seed a Generator "
                         "instance!")


def random_direction(size, random_state=None):
    """Uniformly distributed unit vector in ``size`` dimensions."""
    random_state = check_random_state(random_state)
    g = random_state.standard_normal(size)
    norm = np.linalg.norm(g)
    # a standard normal sample is a.s. nonzero, but not on the sphere
    while norm == 0.:
        g = random_state.standard_normal(size)
        norm = np.linalg.norm(g)
    return g / norm
