import logging

import numpy as np

from ..math import l1_norm, shrink
from .base import ProjectionCache

logger = logging.getLogger(__name__)


def solve_l1_init(instance, eps=1e-10, max_iter=10000, rho=1., cache=None):
    """
    Basis pursuit, ``min ||x||_1 subject to A x = b``, by ADMM on the
    splitting ``x = z``: ``x`` is projected onto the feasible set, ``z`` is
    shrunk by ``1 / rho`` and ``u`` is the scaled dual.

    Returns the feasible iterate with the smallest L1 norm seen, which is
    the usual starting point of the L1/L2 solver.
    """
    A, b = instance.A, instance.b
    if cache is None:
        cache = ProjectionCache(A, b)

    x = cache.offset.copy()
    z = x.copy()
    u = np.zeros_like(x)

    x_best = x
    l1_best = l1_norm(x)

    for k in range(1, max_iter + 1):

        x_new = cache.apply(z - u)
        z = shrink(x_new + u, 1. / rho)
        u += x_new - z

        l1 = l1_norm(x_new)
        if l1 < l1_best:
            x_best, l1_best = x_new, l1

        norm_x = np.linalg.norm(x_new)
        change = np.linalg.norm(x_new - x)
        rel_change = change / norm_x if norm_x > 0. else change
        x = x_new

        if k >= 2 and rel_change <= eps:
            break

    logger.info(f"[Basis pursuit: l1={l1_best:.6f}] iterations: {k:05d}, "
                f"residual: {cache.residual(x_best):.3E}")

    return x_best
