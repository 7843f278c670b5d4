import numpy as np

from scipy.optimize import Bounds

from ..exceptions import ParameterError


def from_bounds(bounds, dim=None):
    """
    Normalise a box constraint to a pair of arrays ``(low, high)``.

    Parameters
    ----------
    bounds : None, tuple of float or scipy.optimize.Bounds
        Either a single interval ``(c, d)`` shared by every coordinate, or
        a ``Bounds`` instance with per-coordinate limits.
    dim : int, optional
        Number of coordinates the box is broadcast to.

    Returns
    -------
    tuple of numpy.ndarray or None
        ``None`` if ``bounds`` is None.
    """
    if bounds is None:
        return None

    if isinstance(bounds, Bounds):
        low = np.asarray(bounds.lb, dtype="float64")
        high = np.asarray(bounds.ub, dtype="float64")
    else:
        # assumes `bounds` is a single `(c, d)` tuple
        try:
            low, high = bounds
        except (TypeError, ValueError):
            raise ParameterError(f"cannot interpret {bounds!r} as a "
                                 "`(c, d)` interval!") from None
        low = np.asarray(low, dtype="float64")
        high = np.asarray(high, dtype="float64")

    if dim is not None:
        low = np.broadcast_to(low, (dim,))
        high = np.broadcast_to(high, (dim,))

    if low.shape != high.shape:
        raise ParameterError("lower and upper bounds sizes do not match!")
    if np.any(np.isnan(low)) or np.any(np.isnan(high)) or np.any(low >= high):
        raise ParameterError("box interval must be nonempty (`c < d`)!")

    return low, high
