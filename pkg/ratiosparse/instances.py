"""
Sensing matrices, sparse ground truths and the problem instances built from
them. Every generator is a pure function of its parameters and seed.
"""
import enum

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .exceptions import ParameterError
from .rng import check_random_state

MAX_SEPARATION_RETRIES = 10**4


class MatrixKind(enum.Enum):

    OVERSAMPLED_DCT = "dct"
    CORRELATED_GAUSSIAN = "gaussian"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class SensingMatrix:
    """
    Dense ``m x n`` sensing matrix together with the metadata it was
    generated from (``param`` holds ``F`` for DCT and ``r`` for Gaussian
    matrices).
    """
    entries: np.ndarray
    kind: MatrixKind = MatrixKind.EXPLICIT
    param: Optional[float] = None
    seed: Optional[int] = None

    def __post_init__(self):
        entries = np.array(self.entries, dtype="float64", ndmin=2)
        if entries.ndim != 2:
            raise ParameterError("sensing matrix must be two-dimensional!")
        if not np.all(np.isfinite(entries)):
            raise ParameterError("sensing matrix entries must be finite!")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def rows(self):
        return self.entries.shape[0]

    @property
    def cols(self):
        return self.entries.shape[1]

    @property
    def shape(self):
        return self.entries.shape

    def __matmul__(self, other):
        return self.entries @ other


@dataclass(frozen=True)
class GroundTruth:

    values: np.ndarray
    min_sep: Optional[int] = None

    def __post_init__(self):
        values = np.array(self.values, dtype="float64")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def support(self):
        return np.flatnonzero(self.values)

    @property
    def sparsity(self):
        return int(np.count_nonzero(self.values))


@dataclass(frozen=True)
class Instance:
    """
    A linear system ``A x = b`` with, optionally, the ground truth that
    generated it.
    """
    matrix: SensingMatrix
    rhs: np.ndarray
    truth: Optional[GroundTruth] = field(default=None)

    def __post_init__(self):
        rhs = np.array(self.rhs, dtype="float64").ravel()
        if rhs.shape != (self.matrix.rows,):
            raise ParameterError(f"right-hand side must have length "
                                 f"{self.matrix.rows}, got {rhs.shape}!")
        rhs.setflags(write=False)
        object.__setattr__(self, "rhs", rhs)

        if self.truth is not None:
            if self.truth.values.shape != (self.matrix.cols,):
                raise ParameterError("ground truth must have length "
                                     f"{self.matrix.cols}!")
            residual = np.linalg.norm(self.matrix @ self.truth.values - rhs)
            if residual > 1e-12 * np.linalg.norm(rhs):
                raise ParameterError("ground truth is inconsistent with the "
                                     "right-hand side "
                                     f"(residual={residual:.3E})")

    @classmethod
    def from_truth(cls, matrix, truth):
        if not isinstance(truth, GroundTruth):
            truth = GroundTruth(truth)
        return cls(matrix=matrix, rhs=matrix @ truth.values, truth=truth)

    @property
    def A(self):
        return self.matrix.entries

    @property
    def b(self):
        return self.rhs

    def relative_error(self, x):
        from .math import relative_error
        assert self.truth is not None, "instance carries no ground truth!"
        return relative_error(x, self.truth.values)


def _check_dimensions(**dims):
    for name, value in dims.items():
        if not (int(value) == value and value >= 1):
            raise ParameterError(f"`{name}` must be a positive integer!")


def gen_dct(m, n, F, seed=None):
    """
    Randomly oversampled discrete cosine transform matrix, whose ``j``-th
    column (``j = 1, ..., n``) is ``cos(2 pi w j / F) / sqrt(m)`` for a
    single frequency vector ``w`` drawn uniformly from ``[0, 1]^m``. Larger
    ``F`` gives more coherent columns.

    Parameters
    ----------
    m, n : int
        Number of rows and columns.
    F : float
        Positive coherence control.
    seed : int, optional
        Seed for the frequency vector.

    Returns
    -------
    SensingMatrix
    """
    _check_dimensions(m=m, n=n)
    if not F > 0.:
        raise ParameterError("`F` must be positive!")

    random_state = check_random_state(seed)
    w = random_state.uniform(size=m)
    j = np.arange(1, n + 1)
    entries = np.cos(2. * np.pi * np.outer(w, j) / F) / np.sqrt(m)

    return SensingMatrix(entries, kind=MatrixKind.OVERSAMPLED_DCT, param=F,
                         seed=seed)


def gen_gaussian(m, n, r, seed=None):
    """
    Gaussian matrix with iid rows distributed as ``N(0, Sigma)`` where
    ``Sigma`` has unit diagonal and constant off-diagonal ``r``.

    Rows are sampled through the rank-one decomposition of ``Sigma`` as
    ``sqrt(1 - r) g + sqrt(r) h 1``, with ``g`` a standard normal vector and
    ``h`` a standard normal scalar shared by the row.
    """
    _check_dimensions(m=m, n=n)
    if not 0. <= r < 1.:
        raise ParameterError("`r` must be in [0, 1)!")

    random_state = check_random_state(seed)
    g = random_state.standard_normal(size=(m, n))
    h = random_state.standard_normal(size=(m, 1))
    entries = np.sqrt(1. - r) * g + np.sqrt(r) * h

    return SensingMatrix(entries, kind=MatrixKind.CORRELATED_GAUSSIAN,
                         param=r, seed=seed)


def gen_sparse_signal(n, s, min_sep=None, seed=None):
    """
    Random ``s``-sparse vector of length ``n`` with standard normal nonzeros,
    normalized to have maximum magnitude 1.

    When ``min_sep`` is given, supports are rejection-sampled until every
    pair of neighbouring indices is at least ``min_sep`` apart.
    """
    _check_dimensions(n=n, s=s)
    if s > n:
        raise ParameterError("sparsity `s` cannot exceed the length `n`!")
    if min_sep is not None:
        if not (int(min_sep) == min_sep and min_sep >= 1):
            raise ParameterError("`min_sep` must be a positive integer!")
        if (s - 1) * min_sep >= n:
            raise ParameterError(f"cannot place {s} spikes at least "
                                 f"{min_sep} apart in length {n}!")

    random_state = check_random_state(seed)

    for _ in range(MAX_SEPARATION_RETRIES):
        support = np.sort(random_state.choice(n, size=s, replace=False))
        if min_sep is None or np.all(np.diff(support) >= min_sep):
            break
    else:
        raise ParameterError("failed to sample a support with minimum "
                             f"separation {min_sep} after "
                             f"{MAX_SEPARATION_RETRIES} attempts!")

    values = np.zeros(n)
    values[support] = random_state.standard_normal(size=s)
    # a nonzero draw of exactly 0. has probability zero, but would break the
    # sparsity count
    values[support] = np.where(values[support] == 0., 1., values[support])
    values /= np.max(np.abs(values))

    return GroundTruth(values, min_sep=min_sep)


TOY_MATRIX = np.array([[1., -1., 0., 0., 0., 0.],
                       [1., 0., -1., 0., 0., 0.],
                       [0., 1., 1., 1., 0., 0.],
                       [2., 2., 0., 0., 1., 0.],
                       [1., 1., 0., 0., 0., -1.]])
TOY_RHS = np.array([0., 0., 20., 40., 18.])


def toy_solution(t):
    """
    The feasible family ``x(t) = (t, t, t, 20 - 2t, 40 - 4t, 2(t - 9))`` of
    the toy instance. Sparsest at ``t = 0``.
    """
    return np.array([t, t, t, 20. - 2. * t, 40. - 4. * t, 2. * (t - 9.)])


def toy_instance():
    """
    The 5 x 6 toy system whose feasible set is the line ``toy_solution(t)``.
    L1 minimization lands on ``t = 10`` (sparsity 4) while the sparsest
    solution, sparsity 3, sits at ``t = 0``.
    """
    matrix = SensingMatrix(TOY_MATRIX)
    return Instance(matrix=matrix, rhs=TOY_RHS,
                    truth=GroundTruth(toy_solution(0.)))
