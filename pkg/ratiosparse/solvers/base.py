import enum
import logging

import numpy as np

from dataclasses import dataclass, replace
from functools import cached_property
from typing import Optional

from scipy.linalg import cho_factor, cho_solve, LinAlgError
from scipy.optimize import OptimizeResult

from ..exceptions import ParameterError, RankError
from ..rng import check_random_state, MAX_SEED

logger = logging.getLogger(__name__)

MAX_CONDITION_NUMBER = 1e12


class Status(enum.IntEnum):
    """
    Termination status codes. ``MAX_ITER`` is not treated as a failure by
    ``best_report``.
    """
    CONVERGED = 0
    MAX_ITER = 1


class Init(enum.Enum):

    L1_BASIS_PURSUIT = "l1"
    EXPLICIT = "explicit"
    LEAST_NORM = "least-norm"


@dataclass(frozen=True)
class SolverConfig:
    """
    Parameters of the signal-domain L1/L2 solver.

    Parameters
    ----------
    rho1, rho2 : float
        Penalty parameters of the ``x = y`` and ``x = z`` splittings.
    eps : float
        Tolerance on the relative change of ``x`` between iterations.
    max_iter : int, optional
        Iteration cap. Defaults to ten times the signal length.
    box : tuple of float or scipy.optimize.Bounds, optional
        Interval ``(c, d)`` the ``z`` iterate is clipped to.
    init : Init
        How the first iterate is chosen.
    x0 : array_like, optional
        Starting point, required iff ``init`` is ``Init.EXPLICIT``.
    seed : int, optional
        Seed for the random directions drawn when ``x + v / rho1 = 0``.
    log_every : int
        Emit a DEBUG record every this many iterations.
    """
    rho1: float = 100.
    rho2: float = 100.
    eps: float = 1e-8
    max_iter: Optional[int] = None
    box: Optional[object] = None
    init: Init = Init.L1_BASIS_PURSUIT
    x0: Optional[np.ndarray] = None
    seed: Optional[int] = None
    log_every: int = 100

    def __post_init__(self):
        if not self.rho1 > 0.:
            raise ParameterError("`rho1` must be positive!")
        if not self.rho2 > 0.:
            raise ParameterError("`rho2` must be positive!")
        if not self.eps > 0.:
            raise ParameterError("`eps` must be positive!")
        if self.max_iter is not None and not self.max_iter >= 1:
            raise ParameterError("`max_iter` must be a positive integer!")
        if not self.log_every >= 1:
            raise ParameterError("`log_every` must be a positive integer!")
        if (self.init is Init.EXPLICIT) != (self.x0 is not None):
            raise ParameterError("`x0` must be given exactly when "
                                 "`init` is explicit!")

    def with_start(self, x0, seed=None):
        return replace(self, init=Init.EXPLICIT, x0=np.asarray(x0),
                       seed=self.seed if seed is None else seed)


class SolveReport(OptimizeResult):
    """
    Result of an ADMM solve. As a ``scipy.optimize.OptimizeResult``, the
    usual attributes are available:

    x : numpy.ndarray
        The final iterate (a signal or an image).
    fun : float
        The L1/L2 objective at ``x`` (of its gradient, for images).
    nit : int
        Number of iterations performed.
    status : Status
    success : bool
        Whether the relative-change test was met.

    Per-iteration histories (``objective_history``, ``feasibility_history``,
    ``residual_y``, ``residual_z``, ``rel_change_history``) have ``nit``
    entries each.
    """

    @property
    def solution(self):
        return self.x

    @property
    def iterations(self):
        return self.nit

    def history_frame(self):
        """Per-iteration histories as a ``pandas.DataFrame``."""
        import pandas as pd

        columns = {"objective": "objective_history",
                   "feasibility": "feasibility_history",
                   "res_y": "residual_y",
                   "res_z": "residual_z",
                   "rel_change": "rel_change_history"}
        frame = pd.DataFrame({name: self[key] for name, key in columns.items()
                              if key in self})
        frame.index = pd.RangeIndex(1, len(frame) + 1, name="iter")
        return frame


class ProjectionCache:
    """
    Factorization of ``A A^T`` for repeated Euclidean projections onto the
    affine set ``{x : A x = b}``.

    The projection of ``f`` is applied as ``f - R (A f - b)`` with
    ``R = A^T (A A^T)^{-1}``, which equals ``projector @ f + offset`` but
    costs ``O(mn)`` instead of ``O(n^2)``.
    """

    def __init__(self, A, b):
        A = np.asarray(A, dtype="float64")
        b = np.asarray(b, dtype="float64").ravel()
        m, n = A.shape
        if b.shape != (m,):
            raise ParameterError(f"`b` must have length {m}!")
        if m > n:
            raise RankError(f"a {m} x {n} matrix cannot have full row rank!")

        gram = A @ A.T
        cond = np.linalg.cond(gram)
        if not cond <= MAX_CONDITION_NUMBER:
            raise RankError(f"A A^T is numerically singular "
                            f"(condition number {cond:.3E})!")
        try:
            factor = cho_factor(gram)
        except LinAlgError as e:
            raise RankError(f"Cholesky factorization of A A^T failed: {e}")

        self.A = A
        self.b = b
        self.pinv = cho_solve(factor, A).T
        self.offset = self.pinv @ b

    @cached_property
    def projector(self):
        n = self.A.shape[1]
        return np.eye(n) - self.pinv @ self.A

    def apply(self, f):
        return f - self.pinv @ (self.A @ f - self.b)

    def residual(self, x):
        return float(np.linalg.norm(self.A @ x - self.b))


def project_affine(cache, f):
    """Nearest point of ``{x : A x = b}`` to ``f``."""
    return cache.apply(np.asarray(f, dtype="float64"))


def multi_start(solver_fn):

    def new_solver(instance, config, num_starts, random_state=None,
                   cache=None, print_fn=logger.info):
        """
        Run the solver from multiple starting points.

        Each starting point is a standard normal sample projected onto the
        feasible set, and each run gets its own seed for the random
        directions drawn inside the solver.

        Parameters
        ----------
        num_starts : int
            Number of starting points from which to run the solver.

        Returns
        -------
        results : list of `SolveReport`
        """
        random_state = check_random_state(random_state)

        assert num_starts > 0, "`num_starts` must be positive integer!"

        if cache is None:
            cache = ProjectionCache(instance.A, instance.b)

        results = []
        for i in range(num_starts):
            x_init = cache.apply(
                random_state.standard_normal(instance.matrix.cols))
            seed = int(random_state.integers(MAX_SEED, dtype="uint64"))
            result = solver_fn(instance, config.with_start(x_init, seed=seed),
                               cache=cache)
            results.append(result)
            print_fn(f"[Start {i+1:02d}: objective={result.fun:.5f}] "
                     f"success: {result.success}, "
                     f"iterations: {result.nit:04d}, "
                     f"status: {result.status} ({result.message})")

        return results

    return new_solver


def best_report(results, filter_fn=lambda res: True):
    """
    The report with the lowest objective, among those that converged or hit
    the iteration cap and pass ``filter_fn``.
    """
    # Equivalent to:
    # min(filter(lambda res: res.status in Status and filter_fn(res),
    #            results), key=lambda res: res.fun, default=None)
    res_best = None
    for res in results:
        if res.status in (Status.CONVERGED, Status.MAX_ITER) \
                and filter_fn(res):
            if res_best is None or res.fun < res_best.fun:
                res_best = res

    return res_best
