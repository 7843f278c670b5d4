import numpy as np

from .exceptions import ParameterError

LARGE_D = 1e150


def l1_norm(x):
    return np.sum(np.abs(x))


def objective(x):
    """
    The ratio of the L1 and L2 norms, with the convention ``0/0 = 0``.

    The ratio is scale invariant and lies in ``[1, sqrt(n)]`` for every
    nonzero ``x`` of length ``n``, with equality on the left exactly for
    1-sparse vectors.

    Examples
    --------
    >>> objective(np.array([0., 3., 0.]))
    1.0

    >>> objective(np.ones(4))
    2.0

    >>> objective(np.zeros(5))
    0.0
    """
    x = np.ravel(x)
    l2 = np.linalg.norm(x)
    if l2 == 0.:
        return 0.
    # rescale before summing so that huge or tiny inputs do not overflow
    # or underflow in the norm ratio
    scale = np.max(np.abs(x))
    y = x / scale
    return float(l1_norm(y) / np.linalg.norm(y))


def relative_error(x_hat, x):
    """
    Relative error ``||x_hat - x||_2 / ||x||_2`` (absolute error if
    ``x == 0``).
    """
    x_hat = np.asarray(x_hat)
    x = np.asarray(x)
    denom = np.linalg.norm(x)
    err = np.linalg.norm(x_hat - x)
    return float(err / denom) if denom > 0. else float(err)


def shrink(v, mu):
    """
    Soft shrinkage, i.e. the proximal map of ``mu * ||.||_1``.

    Examples
    --------
    >>> shrink(np.array([2., -3.]), 1.)
    array([ 1., -2.])
    """
    if not mu >= 0.:
        raise ParameterError("`mu` must be nonnegative!")
    v = np.asarray(v, dtype="float64")
    return np.sign(v) * np.maximum(np.abs(v) - mu, 0.)


def solve_cubic_tau(D):
    """
    Find the unique real root ``tau >= 1`` of ``tau^3 - tau^2 - D = 0``.

    Uses the closed-form cubic root formula

        tau = 1/3 + (C + 1/C) / 3,
        C = cbrt((27 D + 2 + sqrt((27 D + 2)^2 - 4)) / 2),

    followed by a single Newton correction. The discriminant is evaluated as
    ``27 D (27 D + 4)`` to avoid cancellation when ``D`` is small. Beyond
    ``D = 1e150`` the asymptote ``cbrt(D) + 1/3`` replaces the closed form,
    whose intermediate terms would overflow.

    Parameters
    ----------
    D : float or array_like
        Nonnegative scalar(s).

    Returns
    -------
    float or numpy.ndarray
        Root(s), with the same shape as ``D``.

    Examples
    --------
    >>> solve_cubic_tau(0.)
    1.0

    >>> round(solve_cubic_tau(1.), 5)
    1.46557
    """
    D_arr = np.asarray(D, dtype="float64")
    if np.any(np.isnan(D_arr)) or np.any(D_arr < 0.):
        raise ParameterError("`D` must be nonnegative!")

    with np.errstate(over="ignore", invalid="ignore"):
        a = 27. * D_arr
        C = np.cbrt(.5 * (a + 2. + np.sqrt(a * (a + 4.))))
        tau = np.where(D_arr > LARGE_D, np.cbrt(D_arr) + 1. / 3.,
                       (1. + C + 1. / C) / 3.)

    # Newton polish; F'(tau) = 3 tau^2 - 2 tau >= 1 on tau >= 1
    with np.errstate(over="ignore", invalid="ignore"):
        F = tau * tau * (tau - 1.) - D_arr
        step = F / (tau * (3. * tau - 2.))
    tau = np.where(np.isfinite(step), tau - step, tau)
    tau = np.maximum(tau, 1.)

    return float(tau) if np.ndim(D) == 0 else tau
