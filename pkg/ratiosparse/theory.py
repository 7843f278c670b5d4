"""
Numerical checks of sufficient conditions for sparse recovery: coherence,
the null space property and its strong variant, the kernel L1/L2 ratio and a
brute-force L0 oracle. The exhaustive routines refuse instances outside the
regime they can decide exactly, rather than approximate.
"""
import enum
import itertools
import logging

import numpy as np

from dataclasses import dataclass
from typing import Optional, Tuple

from scipy.linalg import null_space
from scipy.special import comb

from .exceptions import ParameterError, UnsupportedSizeError
from .instances import Instance, SensingMatrix
from .math import objective
from .rng import check_random_state
from .solvers.base import ProjectionCache, SolverConfig, best_report
from .solvers.ratio import solve_multi_start

logger = logging.getLogger(__name__)

MARGIN_TOL = 1e-9
MAX_EXHAUSTIVE_COLS = 14
MAX_KERNEL_DIM = 3
MAX_SUPPORTS = 10**6
GRID_RESOLUTION = np.deg2rad(1.)
REFINE_CANDIDATES = 8


class VerdictMethod(enum.Enum):

    EXHAUSTIVE = "exhaustive"
    GRID_REFINE = "grid-refine"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class PropertyVerdict:
    """
    Outcome of a property check.

    ``margin`` is the largest value of the defining inequality's left-hand
    side minus its right-hand side (so negative means satisfied with room
    to spare), attained by the unit kernel vector ``witness`` on
    ``support``. For local-minimum checks, ``step`` is the offending step
    along ``witness``.
    """
    holds: bool
    margin: float
    method: VerdictMethod
    support: Optional[Tuple[int, ...]] = None
    witness: Optional[np.ndarray] = None
    step: Optional[float] = None


def _as_array(A):
    if isinstance(A, SensingMatrix):
        return A.entries
    A = np.asarray(A, dtype="float64")
    if A.ndim == 1:
        A = A[np.newaxis]
    if A.ndim != 2:
        raise ParameterError("sensing matrix must be two-dimensional!")
    return A


def coherence(A):
    """
    Largest absolute cosine between two distinct columns of ``A``.

    Examples
    --------
    >>> coherence(np.eye(3))
    0.0

    >>> coherence(np.array([[1., 1.], [0., 0.]]))
    1.0
    """
    A = _as_array(A)
    norms = np.linalg.norm(A, axis=0)
    if np.any(norms == 0.):
        raise ParameterError("coherence is undefined for zero columns!")

    G = np.abs(A.T @ A) / np.outer(norms, norms)
    np.fill_diagonal(G, 0.)
    return float(G.max())


def coherence_sparsity_bound(A):
    """
    Sparsity below which L1 minimization recovers every sparse vector, as
    guaranteed by coherence: ``(1 + 1 / mu) / 2``.
    """
    mu = coherence(A)
    return np.inf if mu == 0. else .5 * (1. + 1. / mu)


def ratio_sparsity_bound(ratio):
    """
    Sparsity below which ``x`` is the unique solution of both L0 and L1
    minimization, given the kernel ratio ``min ||v||_1 / ||v||_2``:
    ``sqrt(s) < ratio / 2``.
    """
    return (ratio / 2.)**2


def _top_sum(V, s):
    """Sum of the ``s`` largest magnitudes in each row of ``V``."""
    return -np.sum(np.partition(-np.abs(V), s - 1, axis=-1)[..., :s],
                   axis=-1)


def _margins(V, s, factor):
    top = _top_sum(V, s)
    return factor * top - (np.sum(np.abs(V), axis=-1) - top)


def _sphere(angles):
    """Points on the unit sphere of dimension ``len(angles) + 1``."""
    angles = np.atleast_2d(angles)
    if angles.shape[-1] == 1:
        theta, = angles.T
        return np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    theta, phi = angles.T
    return np.stack([np.sin(theta) * np.cos(phi),
                     np.sin(theta) * np.sin(phi),
                     np.cos(theta)], axis=-1)


def _sphere_grid(dim):
    # up to antipodes, which leave the margin unchanged
    theta = np.arange(0., np.pi, GRID_RESOLUTION)
    if dim == 2:
        return theta[:, np.newaxis]
    theta = np.arange(0., np.pi + GRID_RESOLUTION / 2, GRID_RESOLUTION)
    phi = np.arange(0., np.pi, GRID_RESOLUTION)
    return np.stack([g.ravel() for g in np.meshgrid(theta, phi)], axis=-1)


def _refine(fn, angles, step=GRID_RESOLUTION, min_step=1e-12):
    """Coordinate ascent of ``fn`` over ``angles`` with step halving."""
    angles = np.array(angles, dtype="float64")
    value = fn(angles)
    while step > min_step:
        improved = False
        for i in range(len(angles)):
            for sign in (1., -1.):
                trial = angles.copy()
                trial[i] += sign * step
                trial_value = fn(trial)
                if trial_value > value:
                    angles, value, improved = trial, trial_value, True
        if not improved:
            step /= 2.
    return angles, value


def _max_kernel_margin(A, s, factor):

    A = _as_array(A)
    n = A.shape[1]

    if not (int(s) == s and 1 <= s <= n):
        raise ParameterError(f"`s` must be an integer in [1, {n}]!")
    if n > MAX_EXHAUSTIVE_COLS:
        raise UnsupportedSizeError(f"exhaustive null space checks support "
                                   f"at most {MAX_EXHAUSTIVE_COLS} columns, "
                                   f"got {n}!")

    N = null_space(A)
    dim = N.shape[1]
    if dim > MAX_KERNEL_DIM:
        raise UnsupportedSizeError(f"exhaustive null space checks support "
                                   f"kernels of dimension at most "
                                   f"{MAX_KERNEL_DIM}, got {dim}!")

    if dim == 0:
        return -np.inf, None, None, VerdictMethod.EXHAUSTIVE

    if dim == 1:
        v = N[:, 0]
        method = VerdictMethod.EXHAUSTIVE
    else:
        def margin_fn(angles):
            return float(_margins(N @ _sphere(angles)[0], s, factor))

        grid = _sphere_grid(dim)
        values = _margins(_sphere(grid) @ N.T, s, factor)
        candidates = np.argsort(values)[::-1][:REFINE_CANDIDATES]

        best_angles, best_value = None, -np.inf
        for i in candidates:
            angles, value = _refine(margin_fn, grid[i])
            if value > best_value:
                best_angles, best_value = angles, value

        v = N @ _sphere(best_angles)[0]
        method = VerdictMethod.GRID_REFINE

    margin = float(_margins(v, s, factor))
    support = tuple(sorted(np.argsort(-np.abs(v), kind="stable")[:s]
                           .tolist()))
    return margin, support, v, method


def check_nsp(A, s):
    """
    Null space property of order ``s``: ``||v_S||_1 < ||v_Sc||_1`` for every
    nonzero kernel vector ``v`` and every support ``|S| <= s``.

    For each kernel vector the worst support holds its ``s`` largest
    magnitudes, so the check maximizes ``||v_S||_1 - ||v_Sc||_1`` over the
    unit sphere of the kernel, exactly for one-dimensional kernels and by a
    one-degree grid with local refinement for kernels of dimension 2 or 3.

    Parameters
    ----------
    A : array_like or SensingMatrix
        At most 14 columns.
    s : int
        Order of the property.

    Returns
    -------
    PropertyVerdict
        Holds iff the maximum margin is below ``-1e-9``.

    Raises
    ------
    UnsupportedSizeError
        If ``A`` has too many columns or too large a kernel.
    """
    margin, support, v, method = _max_kernel_margin(A, s, factor=1.)
    holds = margin < -MARGIN_TOL
    logger.debug(f"[NSP order {s}: margin={margin:.3E}] holds: {holds}, "
                 f"support: {support}")
    return PropertyVerdict(holds=holds, margin=margin, method=method,
                           support=support, witness=v)


def check_snsp(A, s):
    """
    Strong null space property of order ``s``:
    ``(s + 1) ||v_S||_1 <= ||v_Sc||_1``. Unlike the NSP the inequality is not
    strict, so the verdict holds iff the maximum margin is at most ``1e-9``.
    """
    margin, support, v, method = _max_kernel_margin(A, s, factor=s + 1.)
    holds = margin <= MARGIN_TOL
    logger.debug(f"[sNSP order {s}: margin={margin:.3E}] holds: {holds}, "
                 f"support: {support}")
    return PropertyVerdict(holds=holds, margin=margin, method=method,
                           support=support, witness=v)


def kernel_ratio_bound(A, num_starts=5, config=None, seed=0):
    """
    Upper estimate of ``min ||v||_1 / ||v||_2`` over nonzero kernel vectors.

    The minimization is run with the L1/L2 solver on the kernel vectors
    summing to one, i.e. on the system ``[A; 1^T] x = [0; 1]``, from
    ``num_starts`` random feasible starts, and the lowest objective is
    returned. Being a nonconvex solve, the value is never claimed to be the
    infimum.
    """
    A = _as_array(A)
    m, n = A.shape
    if n < m + 1:
        raise ParameterError("`A` must have more columns than rows!")

    matrix = SensingMatrix(np.vstack([A, np.ones(n)]))
    rhs = np.zeros(m + 1)
    rhs[-1] = 1.
    instance = Instance(matrix=matrix, rhs=rhs)

    if config is None:
        config = SolverConfig()

    cache = ProjectionCache(instance.A, instance.b)
    results = solve_multi_start(instance, config, num_starts=num_starts,
                                random_state=seed, cache=cache,
                                print_fn=logger.debug)
    res_best = best_report(results)

    logger.info(f"[Kernel ratio bound: {res_best.fun:.6f}] "
                f"starts: {num_starts}")
    return res_best.fun


def kernel_ratio_exact(A, max_supports=MAX_SUPPORTS):
    """
    Exact ``min ||v||_1 / ||v||_2`` over nonzero kernel vectors.

    On the polytope ``{v in ker(A) : ||v||_1 = 1}`` the convex function
    ``||v||_2`` is maximized at a vertex, and the vertices are the kernel
    vectors of minimal support. Those are found by enumerating supports of
    size at most ``rank(A) + 1`` whose restricted kernel is one-dimensional.

    Returns ``inf`` if the kernel is trivial.
    """
    A = _as_array(A)
    n = A.shape[1]
    rank = np.linalg.matrix_rank(A)
    if rank == n:
        return np.inf

    k_max = rank + 1
    num_supports = sum(comb(n, k, exact=True) for k in range(1, k_max + 1))
    if num_supports > max_supports:
        raise UnsupportedSizeError(f"enumerating {num_supports} supports "
                                   f"exceeds the budget of {max_supports}!")

    ratio_best = np.inf
    for k in range(1, k_max + 1):
        for support in itertools.combinations(range(n), k):
            N = null_space(A[:, support])
            if N.shape[1] == 1:
                ratio_best = min(ratio_best, objective(N[:, 0]))

    return ratio_best


def l0_oracle(instance, s_max=None):
    """
    Sparsest solution of ``A x = b`` by enumerating supports of increasing
    size, accepting the first whose least-squares residual is at most
    ``1e-9 ||b||_2``.

    Parameters
    ----------
    instance : Instance
    s_max : int, optional
        Largest sparsity to try (default: all columns).

    Returns
    -------
    s : int
    x : numpy.ndarray

    Raises
    ------
    UnsupportedSizeError
        Unless ``n <= 24`` or ``C(n, s_max) <= 10^6``.
    ParameterError
        If no solution with at most ``s_max`` nonzeros exists.
    """
    A, b = instance.A, instance.b
    n = A.shape[1]
    if s_max is None:
        s_max = n
    if not (int(s_max) == s_max and 1 <= s_max <= n):
        raise ParameterError(f"`s_max` must be an integer in [1, {n}]!")

    if not np.any(b):
        return 0, np.zeros(n)

    if n > 24 and comb(n, s_max, exact=True) > MAX_SUPPORTS:
        raise UnsupportedSizeError(f"C({n}, {s_max}) supports exceed the "
                                   f"budget of {MAX_SUPPORTS}!")

    tol = 1e-9 * np.linalg.norm(b)
    for s in range(1, s_max + 1):
        for support in itertools.combinations(range(n), s):
            A_S = A[:, support]
            x_S, *_ = np.linalg.lstsq(A_S, b, rcond=None)
            if np.linalg.norm(A_S @ x_S - b) <= tol:
                x = np.zeros(n)
                x[list(support)] = x_S
                logger.debug(f"[L0 oracle: s={s}] support: {support}")
                return s, x

    raise ParameterError(f"no solution with at most {s_max} nonzeros!")


def verify_local_min(A, x, trials=100, t_grid=None, directions=None,
                     radius=None, b=None, seed=None):
    """
    Empirically check that ``x`` is a local minimizer of the L1/L2 ratio on
    the feasible set ``{x' : A x' = A x}``.

    Along each of ``trials`` random unit kernel directions ``v`` (or the
    given ``directions``), the objective at ``x + t v`` must not fall more
    than ``1e-12`` below the objective at ``x`` for every ``t`` in
    ``radius * t_grid``. The radius starts at a quarter of the smallest
    nonzero magnitude of ``x`` and is halved on failure, down to ``1e-6``,
    before a violation is reported.

    Parameters
    ----------
    A : array_like or SensingMatrix
    x : array_like
        Nonzero feasible point.
    trials : int
        Number of random directions, ignored if ``directions`` is given.
    t_grid : array_like, optional
        Relative steps in ``[-1, 1]``.
    directions : array_like, optional
        Kernel directions, one per row.
    radius : float, optional
        Initial radius.
    b : array_like, optional
        Right-hand side ``x`` must satisfy (default ``A x``).
    seed : int, optional

    Returns
    -------
    PropertyVerdict
        On failure, ``witness`` and ``step`` give the violating direction
        and step.
    """
    A = _as_array(A)
    x = np.asarray(x, dtype="float64")
    if not np.any(x):
        raise ParameterError("`x` must be nonzero!")

    if b is not None:
        b = np.asarray(b, dtype="float64")
        if np.linalg.norm(A @ x - b) > 1e-10 * (1. + np.linalg.norm(b)):
            raise ParameterError("`x` is not feasible!")

    N = null_space(A)
    if N.shape[1] == 0:
        # the feasible set is the single point `x`
        return PropertyVerdict(holds=True, margin=0.,
                               method=VerdictMethod.EXHAUSTIVE)

    if directions is None:
        random_state = check_random_state(seed)
        C = random_state.standard_normal(size=(trials, N.shape[1]))
        directions = C @ N.T
    directions = np.atleast_2d(np.asarray(directions, dtype="float64"))
    norms = np.linalg.norm(directions, axis=1, keepdims=True)
    if np.any(norms == 0.):
        raise ParameterError("directions must be nonzero!")
    directions = directions / norms
    if np.max(np.abs(directions @ A.T)) > 1e-10:
        raise ParameterError("directions must lie in the kernel of `A`!")

    if t_grid is None:
        t_grid = np.linspace(-1., 1., 41)
    t_grid = np.asarray(t_grid, dtype="float64")

    if radius is None:
        radius = np.min(np.abs(x[x != 0.])) / 4.

    f0 = objective(x)
    margin = np.inf
    for v in directions:
        r = radius
        while True:
            steps = r * t_grid
            gaps = np.array([objective(x + t * v) for t in steps]) - f0
            if np.all(gaps >= -1e-12):
                margin = min(margin, float(np.min(gaps)))
                break
            r /= 2.
            if r < 1e-6:
                i = np.argmin(gaps)
                logger.debug(f"[Local minimum violated: "
                             f"gap={gaps[i]:.3E}] step: {steps[i]:.3E}")
                return PropertyVerdict(holds=False, margin=float(-gaps[i]),
                                       method=VerdictMethod.SAMPLED,
                                       witness=v, step=float(steps[i]))

    return PropertyVerdict(holds=True, margin=-margin,
                           method=VerdictMethod.SAMPLED)


def asymptotic_ratio_gap(x, v, scale=1e6):
    """
    ``|objective(x + t v) - ||v||_1 / ||v||_2|`` at
    ``t = scale ||x||_2 / ||v||_2``, which vanishes as ``scale`` grows: far
    along a kernel direction the feasible objective approaches the ratio of
    that direction.
    """
    x = np.asarray(x, dtype="float64")
    v = np.asarray(v, dtype="float64")
    t = scale * np.linalg.norm(x) / np.linalg.norm(v)
    return abs(objective(x + t * v) - objective(v))
