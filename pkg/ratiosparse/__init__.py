"""Top-level package for ratiosparse."""

__author__ = """Louis C. Tiao"""
__email__ = 'louistiao@gmail.com'
__version__ = '0.1.0'

from .exceptions import (ConfigError, DegenerateInstanceError, ParameterError,
                         RankError, RatioSparseError, UnsupportedSizeError)
from .instances import (GroundTruth, Instance, MatrixKind, SensingMatrix,
                        gen_dct, gen_gaussian, gen_sparse_signal,
                        toy_instance)
from .math import l1_norm, objective, relative_error, shrink, solve_cubic_tau
from .solvers import SolverConfig, SolveReport, solve, solve_l1_init
