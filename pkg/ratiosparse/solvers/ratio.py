"""
The L1/L2 minimization

    min ||x||_1 / ||x||_2  subject to  A x = b  (and optionally c <= x <= d)

by ADMM on the splitting ``x = y`` (denominator) and ``x = z`` (numerator).
"""
import logging

import numpy as np

from ..exceptions import DegenerateInstanceError, ParameterError
from ..math import l1_norm, objective, shrink, solve_cubic_tau
from ..rng import check_random_state, random_direction
from .base import (Init, ProjectionCache, SolverConfig, SolveReport, Status,
                   multi_start)
from .basis_pursuit import solve_l1_init
from .utils import from_bounds

logger = logging.getLogger(__name__)


def y_update(c, d, rho1, random_state=None):
    """
    Minimizer of ``c / ||y||_2 + rho1 / 2 ||y - d||_2^2``.

    The minimizer is ``tau * d`` where ``tau >= 1`` is the real root of
    ``tau^3 - tau^2 - c / (rho1 ||d||^3)``. When ``c = 0`` it is ``d`` itself,
    and when ``d = 0`` every vector of norm ``cbrt(c / rho1)`` is a
    minimizer, so a random one is drawn.

    Parameters
    ----------
    c : float
        Nonnegative numerator, i.e. the current L1 norm.
    d : array_like
        Point to shrink away from the origin. Any shape.
    rho1 : float
        Positive penalty parameter.
    random_state : None, int or numpy.random.Generator
        Source of the random direction used when ``d = 0``.

    Returns
    -------
    numpy.ndarray
    """
    if not rho1 > 0.:
        raise ParameterError("`rho1` must be positive!")
    if not c >= 0.:
        raise ParameterError("`c` must be nonnegative!")

    d = np.asarray(d, dtype="float64")
    if c == 0.:
        return d.copy()

    eta = np.linalg.norm(d)
    if eta == 0.:
        return np.cbrt(c / rho1) * random_direction(d.shape, random_state)

    with np.errstate(over="ignore", divide="ignore"):
        D = c / (rho1 * eta**3)
    if np.isinf(D):
        # tau ~ cbrt(D) once D is this large
        return np.cbrt(c / rho1) * (d / eta)

    return solve_cubic_tau(D) * d


def z_update(r, nu, box=None):
    """
    Soft shrinkage of ``r`` by ``nu``, clipped to ``box`` when one is given.
    ``box`` is anything `from_bounds` accepts.
    """
    z = shrink(r, nu)
    bounds = from_bounds(box)
    if bounds is not None:
        low, high = bounds
        z = np.clip(z, low, high)
    return z


def _initial_point(instance, config, cache):

    if config.init is Init.EXPLICIT:
        x0 = np.asarray(config.x0, dtype="float64")
        if x0.shape != (instance.matrix.cols,):
            raise ParameterError(f"`x0` must have length "
                                 f"{instance.matrix.cols}!")
        return cache.apply(x0)

    if config.init is Init.LEAST_NORM:
        return cache.offset.copy()

    return solve_l1_init(instance, cache=cache)


def solve(instance, config=None, cache=None):
    """
    Minimize the L1/L2 ratio over the feasible set of ``instance``.

    Every ``x`` iterate is the exact projection onto ``{x : A x = b}``,
    whereas ``z`` (exposed as ``final_z``) is the iterate that honours the
    box. ``x`` satisfies the box only in the limit.

    Parameters
    ----------
    instance : Instance
    config : SolverConfig, optional
    cache : ProjectionCache, optional
        Reused across solves on the same system.

    Returns
    -------
    SolveReport
    """
    if config is None:
        config = SolverConfig()

    A, b = instance.A, instance.b
    n = A.shape[1]

    if not np.any(b):
        raise DegenerateInstanceError("right-hand side `b` must be nonzero!")

    if cache is None:
        cache = ProjectionCache(A, b)

    box = from_bounds(config.box, dim=n)
    max_iter = config.max_iter or 10 * n
    rho1, rho2 = config.rho1, config.rho2
    random_state = check_random_state(config.seed)

    x = _initial_point(instance, config, cache)
    y = x.copy()
    z = x.copy() if box is None else np.clip(x, *box)
    v = np.zeros(n)
    w = np.zeros(n)

    feasibility_tol = 1e-8 * (1. + np.linalg.norm(b))

    objective_history = []
    feasibility_history = []
    residual_y = []
    residual_z = []
    rel_change_history = []

    status = Status.MAX_ITER
    for k in range(1, max_iter + 1):

        f = (rho1 * y - v + rho2 * z - w) / (rho1 + rho2)
        x_new = cache.apply(f)

        y = y_update(l1_norm(z), x_new + v / rho1, rho1,
                     random_state=random_state)

        eta = np.linalg.norm(y)
        nu = 1. / (rho2 * eta) if eta > 0. else np.inf
        z = z_update(x_new + w / rho2, nu, box=box)

        v += rho1 * (x_new - y)
        w += rho2 * (x_new - z)

        norm_x = np.linalg.norm(x_new)
        change = np.linalg.norm(x_new - x)
        rel_change = change / norm_x if norm_x > 0. else change
        x = x_new

        feasibility = cache.residual(x)
        if feasibility > feasibility_tol:
            logger.warning(f"[Iteration {k:05d}] affine projection residual "
                           f"{feasibility:.3E} exceeds {feasibility_tol:.3E}")

        objective_history.append(objective(x))
        feasibility_history.append(feasibility)
        residual_y.append(np.linalg.norm(x - y))
        residual_z.append(np.linalg.norm(x - z))
        rel_change_history.append(rel_change)

        if k % config.log_every == 0:
            logger.debug(f"[Iteration {k:05d}: "
                         f"objective={objective_history[-1]:.6f}] "
                         f"res_y: {residual_y[-1]:.3E}, "
                         f"res_z: {residual_z[-1]:.3E}, "
                         f"relative change: {rel_change:.3E}")

        # the first x-update reproduces a feasible initial point
        if k >= 2 and rel_change <= config.eps:
            status = Status.CONVERGED
            break

    message = "relative change below tolerance" \
        if status is Status.CONVERGED else "maximum number of iterations"
    fun = objective(x)
    logger.info(f"[L1/L2 ADMM: objective={fun:.6f}] "
                f"iterations: {k:05d}, status: {status} ({message})")

    return SolveReport(x=x, fun=fun, nit=k, status=status,
                       success=status is Status.CONVERGED, message=message,
                       final_y=y, final_z=z,
                       objective_history=np.array(objective_history),
                       feasibility_history=np.array(feasibility_history),
                       residual_y=np.array(residual_y),
                       residual_z=np.array(residual_z),
                       rel_change_history=np.array(rel_change_history))


solve_multi_start = multi_start(solver_fn=solve)
