import numpy as np

from ..exceptions import ParameterError

# columns: intensity, semi-axis a, semi-axis b, centre x0, centre y0,
# rotation in degrees (modified, higher-contrast intensities)
SHEPP_LOGAN_ELLIPSES = np.array([[1., .69, .92, 0., 0., 0.],
                                 [-.8, .6624, .8740, 0., -.0184, 0.],
                                 [-.2, .1100, .3100, .22, 0., -18.],
                                 [-.2, .1600, .4100, -.22, 0., 18.],
                                 [.1, .2100, .2500, 0., .35, 0.],
                                 [.1, .0460, .0460, 0., .1, 0.],
                                 [.1, .0460, .0460, 0., -.1, 0.],
                                 [.1, .0460, .0230, -.08, -.605, 0.],
                                 [.1, .0230, .0230, 0., -.606, 0.],
                                 [.1, .0230, .0460, .06, -.605, 0.]])


def shepp_logan(n):
    """
    The Shepp-Logan head phantom on an ``n x n`` grid over ``[-1, 1]^2``,
    with row 0 at the top, clamped to ``[0, 1]``.

    Parameters
    ----------
    n : int
        Image side, at least 16.

    Returns
    -------
    numpy.ndarray
    """
    if not (int(n) == n and n >= 16):
        raise ParameterError("`n` must be an integer of at least 16!")
    n = int(n)

    xax = (np.arange(n) - (n - 1) / 2.) / ((n - 1) / 2.)
    x, y = np.meshgrid(xax, xax[::-1])

    u = np.zeros((n, n))
    for A, a, b, x0, y0, phi in SHEPP_LOGAN_ELLIPSES:
        phi = np.deg2rad(phi)
        cosp, sinp = np.cos(phi), np.sin(phi)
        xr = (x - x0) * cosp + (y - y0) * sinp
        yr = (y - y0) * cosp - (x - x0) * sinp
        u[(xr / a)**2 + (yr / b)**2 <= 1.] += A

    return np.clip(u, 0., 1.)
