"""
Experiment drivers: success-rate sweeps with failure classification, the toy
objective landscape, kernel ratio against coherence, and L1 recovery with
and without minimum separation.
"""
import enum
import logging
import os
import time

import numpy as np
import pandas as pd

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import partial
from typing import Optional, Tuple

from numpy.linalg import LinAlgError
from tqdm import tqdm

from .data import Outcome, Record, TrialRecord
from .exceptions import ParameterError, RankError, RatioSparseError
from .instances import (MatrixKind, Instance, gen_dct, gen_gaussian,
                        gen_sparse_signal, toy_solution)
from .math import l1_norm, objective
from .solvers.base import Init, ProjectionCache, SolverConfig
from .solvers.basis_pursuit import solve_l1_init
from .solvers.ratio import solve
from .theory import kernel_ratio_bound

logger = logging.getLogger(__name__)

SUCCESS_TOL = 1e-3
TRUTH_SEED_OFFSET = 10**6
SOLVER_SEED_OFFSET = 2 * 10**6
THREADS_ENV = "RATIO_SPARSE_THREADS"


class SolverKind(enum.Enum):

    L1L2 = "l1l2"
    L1L2_BOX = "l1l2-box"
    L1 = "l1"


def tie_tolerance(objective_truth):
    return 1e-9 * max(1., objective_truth)


def is_tie(objective_truth, objective_sol):
    return abs(objective_truth - objective_sol) \
        <= tie_tolerance(objective_truth)


def classify(objective_truth, objective_sol, rel_error,
             success_tol=SUCCESS_TOL):
    """
    Classify a trial as a success, a model failure or an algorithm failure.

    Examples
    --------
    >>> classify(2., 1.5, 1e-4)
    <Outcome.SUCCESS: 'success'>

    >>> classify(2., 1.5, .5)
    <Outcome.MODEL_FAILURE: 'model_failure'>

    >>> classify(1.5, 2., .5)
    <Outcome.ALGORITHM_FAILURE: 'algorithm_failure'>
    """
    if rel_error <= success_tol:
        return Outcome.SUCCESS
    if objective_truth > objective_sol + tie_tolerance(objective_truth):
        return Outcome.MODEL_FAILURE
    # ties included
    return Outcome.ALGORITHM_FAILURE


@dataclass(frozen=True)
class ExperimentConfig:
    """
    A success-rate sweep over sparsity levels.

    ``matrix_param`` is ``F`` for DCT and ``r`` for Gaussian matrices.
    ``record_timing=False`` stores zero seconds so that reruns produce
    identical CSV bytes.
    """
    matrix_kind: MatrixKind = MatrixKind.OVERSAMPLED_DCT
    matrix_param: float = 5.
    m: int = 64
    n: int = 1024
    sparsity_grid: Tuple[int, ...] = tuple(range(2, 31, 2))
    trials: int = 50
    base_seed: int = 0
    solver: SolverKind = SolverKind.L1L2_BOX
    box: Tuple[float, float] = (-1., 1.)
    min_sep: Optional[int] = None
    solver_params: SolverConfig = field(default_factory=SolverConfig)
    record_timing: bool = False

    def __post_init__(self):
        if self.matrix_kind is MatrixKind.EXPLICIT:
            raise ParameterError("experiments generate their own matrices!")
        if not len(self.sparsity_grid) > 0:
            raise ParameterError("`sparsity_grid` must be nonempty!")
        if list(self.sparsity_grid) != sorted(self.sparsity_grid):
            raise ParameterError("`sparsity_grid` must be ascending!")
        if not self.trials >= 1:
            raise ParameterError("`trials` must be a positive integer!")
        if not self.base_seed >= 0:
            raise ParameterError("`base_seed` must be nonnegative!")
        object.__setattr__(self, "sparsity_grid",
                           tuple(int(s) for s in self.sparsity_grid))

    def matrix(self, k):
        seed = self.base_seed + k
        if self.matrix_kind is MatrixKind.OVERSAMPLED_DCT:
            return gen_dct(self.m, self.n, self.matrix_param, seed=seed)
        return gen_gaussian(self.m, self.n, self.matrix_param, seed=seed)

    def truth(self, s, k):
        return gen_sparse_signal(self.n, s, min_sep=self.min_sep,
                                 seed=self.base_seed + TRUTH_SEED_OFFSET + k)


def run_trial(config, s, k):
    """Run trial ``k`` at sparsity ``s``. Never raises for rank failures."""
    seed = config.base_seed + k
    start = time.perf_counter()
    try:
        instance = Instance.from_truth(config.matrix(k), config.truth(s, k))
        cache = ProjectionCache(instance.A, instance.b)
        x = solve_l1_init(instance, cache=cache)
        iterations = 0

        if config.solver is not SolverKind.L1:
            box = config.box if config.solver is SolverKind.L1L2_BOX \
                else None
            solver_params = replace(config.solver_params, box=box,
                                    init=Init.EXPLICIT, x0=x,
                                    seed=seed + SOLVER_SEED_OFFSET)
            report = solve(instance, solver_params, cache=cache)
            x, iterations = report.x, report.nit
    except (RatioSparseError, LinAlgError) as e:
        logger.warning(f"[Trial {k:03d} at sparsity {s}: errored] {e}")
        return TrialRecord(sparsity=s, trial=k, seed=seed, errored=True)

    seconds = time.perf_counter() - start if config.record_timing else 0.

    # failures are diagnosed with the objective the solver minimizes
    objective_fn = l1_norm if config.solver is SolverKind.L1 else objective
    objective_truth = objective_fn(instance.truth.values)
    objective_sol = objective_fn(x)
    rel_error = instance.relative_error(x)
    classification = classify(objective_truth, objective_sol, rel_error)

    return TrialRecord(sparsity=s, trial=k, seed=seed, rel_error=rel_error,
                       classification=classification,
                       iterations=iterations, seconds=seconds,
                       objective_truth=objective_truth,
                       objective_sol=objective_sol,
                       tie=(classification is not Outcome.SUCCESS
                            and is_tie(objective_truth, objective_sol)))


def num_workers(workers=None):
    """
    Worker count: ``workers`` (default: all CPUs), capped by the
    ``RATIO_SPARSE_THREADS`` environment variable.
    """
    if workers is None:
        workers = os.cpu_count() or 1
    cap = os.environ.get(THREADS_ENV)
    if cap is not None:
        try:
            workers = min(workers, int(cap))
        except ValueError:
            raise ParameterError(f"{THREADS_ENV} must be an integer, "
                                 f"got {cap!r}!") from None
    return max(1, workers)


def _run_task(config, task):
    s, k = task
    return run_trial(config, s, k)


def run_experiment(config, workers=1, progress=True):
    """
    Run every (sparsity, trial) pair of ``config``.

    Returns
    -------
    Record
        The ledger, whose ``summary`` gives one row per sparsity.
    """
    tasks = [(s, k) for s in config.sparsity_grid
             for k in range(config.trials)]
    workers = num_workers(workers)
    fn = partial(_run_task, config)

    logger.info(f"[Experiment: {len(tasks)} trials] "
                f"matrix: {config.matrix_kind.value}({config.matrix_param}), "
                f"solver: {config.solver.value}, workers: {workers}")

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            records = list(tqdm(executor.map(fn, tasks), total=len(tasks),
                                disable=not progress))
    else:
        records = [fn(task) for task in tqdm(tasks, disable=not progress)]

    record = Record(sorted(records, key=lambda r: (r.sparsity, r.trial)))

    num_errored = sum(r.errored for r in record.records)
    if num_errored:
        logger.warning(f"{num_errored} errored trials excluded from rates")
    logger.info(f"[Experiment done] ties: {record.num_ties()}")

    return record


def toy_landscape(t_min=-5., t_max=15., steps=2001):
    """
    L1 and L1/L2 objectives along the feasible line of the toy instance.

    Returns
    -------
    frame : pandas.DataFrame
        Columns ``t``, ``l1``, ``l1_over_l2``.
    argmin : dict
        Grid minimizer of each objective.
    """
    if not steps >= 2:
        raise ParameterError("`steps` must be at least 2!")
    if not t_max > t_min:
        raise ParameterError("`t_max` must exceed `t_min`!")

    # rounding puts grid points such as t = 0 exactly on the grid
    t = np.round(t_min + (t_max - t_min) * np.arange(steps) / (steps - 1),
                 decimals=12)
    xs = [toy_solution(ti) for ti in t]
    frame = pd.DataFrame({"t": t,
                          "l1": [l1_norm(x) for x in xs],
                          "l1_over_l2": [objective(x) for x in xs]})

    argmin = {column: float(frame["t"][frame[column].idxmin()])
              for column in ("l1", "l1_over_l2")}
    return frame, argmin


def _bound_task(m, n, num_starts, config, task):
    F, seed = task
    try:
        return kernel_ratio_bound(gen_dct(m, n, F, seed=seed),
                                  num_starts=num_starts, config=config,
                                  seed=seed)
    except (RankError, LinAlgError) as e:
        logger.warning(f"[Realization F={F:g}, seed={seed}: errored] {e}")
        return np.nan


def run_ratio_vs_F(F_grid, realizations=50, m=64, n=1024, base_seed=0,
                   num_starts=5, config=None, workers=1, progress=True):
    """
    Mean and standard deviation of `kernel_ratio_bound` over ``realizations``
    DCT matrices for each ``F``. Matrix ``k`` is seeded ``base_seed + k``.

    Realizations whose constraint system is rank deficient are counted in
    the ``errored`` column and left out of the statistics.
    """
    if not realizations >= 2:
        raise ParameterError("`realizations` must be at least 2!")

    tasks = [(F, base_seed + k) for F in F_grid for k in range(realizations)]
    fn = partial(_bound_task, m, n, num_starts, config)
    workers = num_workers(workers)

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            bounds = list(tqdm(executor.map(fn, tasks), total=len(tasks),
                               disable=not progress))
    else:
        bounds = [fn(task) for task in tqdm(tasks, disable=not progress)]

    # pandas reductions skip the errored (NaN) realizations
    bounds = pd.DataFrame(np.reshape(bounds, (len(F_grid), realizations)))
    errored = bounds.isna().sum(axis=1)
    if errored.any():
        logger.warning(f"{int(errored.sum())} errored realizations excluded "
                       "from the statistics")

    return pd.DataFrame({"F": list(F_grid),
                         "mean_bound": bounds.mean(axis=1).to_numpy(),
                         "std_bound": bounds.std(axis=1, ddof=1).to_numpy(),
                         "errored": errored.to_numpy()})


def run_separation_study(F_grid, sparsity_grid, min_sep=40, trials=50, m=64,
                         n=1024, base_seed=0, workers=1, progress=True):
    """
    L1 success rates with and without a minimum separation between spikes,
    on the same matrices.
    """
    frames = []
    for F in F_grid:
        for separation in (None, min_sep):
            config = ExperimentConfig(matrix_param=F, m=m, n=n,
                                      sparsity_grid=tuple(sparsity_grid),
                                      trials=trials, base_seed=base_seed,
                                      solver=SolverKind.L1,
                                      min_sep=separation)
            summary = run_experiment(config, workers=workers,
                                     progress=progress).summary()
            frames.append(summary[["sparsity", "success_rate"]]
                          .assign(F=F, min_sep=separation or 0))

    frame = pd.concat(frames, ignore_index=True)
    return frame[["F", "min_sep", "sparsity", "success_rate"]]


def write_trials(record, path):
    """Per-trial CSV, sorted by sparsity then trial."""
    record.to_dataframe().to_csv(path, index=False, float_format="%.17g")


def write_summary(record, path):
    record.summary().to_csv(path, index=False, float_format="%.17g")
