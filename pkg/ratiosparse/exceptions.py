import numpy as np


class RatioSparseError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(RatioSparseError, ValueError):
    pass


class DegenerateInstanceError(ParameterError):
    """Raised for a zero right-hand side, for which the ratio is undefined."""


class ConfigError(ParameterError):
    pass


class RankError(RatioSparseError, np.linalg.LinAlgError):
    pass


class UnsupportedSizeError(RatioSparseError):
    """
    Raised by the exhaustive routines (support enumeration, sphere search)
    when the instance lies outside the regime they can handle exactly.
    """
