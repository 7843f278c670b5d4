"""
Discrete operators on ``n x m`` images with periodic boundary conditions.

Gradient fields are arrays of shape ``(2, n, m)`` holding the horizontal
(``[0]``, along columns) and vertical (``[1]``, along rows) forward
differences. The forward DFT is unnormalized and the inverse carries the
``1 / (n m)`` factor, as in ``scipy.fft``.
"""
import numpy as np

from dataclasses import dataclass
from typing import Optional

from scipy import fft

from ..exceptions import ParameterError


def _check_image(u):
    u = np.asarray(u, dtype="float64")
    if u.ndim != 2:
        raise ParameterError("image must be two-dimensional!")
    return u


def _check_field(p):
    p = np.asarray(p, dtype="float64")
    if p.ndim != 3 or p.shape[0] != 2:
        raise ParameterError("gradient field must have shape (2, n, m)!")
    return p


def grad(u):
    """
    Forward differences with periodic wrap.

    Examples
    --------
    >>> grad(np.ones((3, 4))).shape
    (2, 3, 4)
    """
    u = _check_image(u)
    return np.stack([np.roll(u, -1, axis=1) - u,
                     np.roll(u, -1, axis=0) - u])


def div_adjoint(p):
    """
    The adjoint of `grad`, i.e. the negative divergence, so that
    ``<grad(u), p> = <u, div_adjoint(p)>``.
    """
    px, py = _check_field(p)
    return (np.roll(px, 1, axis=1) - px) + (np.roll(py, 1, axis=0) - py)


def laplacian_symbol(n, m):
    """
    Fourier symbol of ``div_adjoint(grad(.))``, the negative periodic
    Laplacian, on an ``n x m`` grid.
    """
    sy = 4. * np.sin(np.pi * np.arange(n) / n)**2
    sx = 4. * np.sin(np.pi * np.arange(m) / m)**2
    return sy[:, np.newaxis] + sx[np.newaxis, :]


@dataclass(frozen=True)
class FourierMask:
    """
    Boolean sampling pattern over DFT frequency indices, in the unshifted
    layout of ``scipy.fft.fft2`` (DC at ``[0, 0]``).
    """
    keep: np.ndarray
    line_count: Optional[int] = None

    def __post_init__(self):
        keep = np.array(self.keep, dtype=bool)
        if keep.ndim != 2:
            raise ParameterError("mask must be two-dimensional!")
        keep.setflags(write=False)
        object.__setattr__(self, "keep", keep)

    @property
    def shape(self):
        return self.keep.shape

    @property
    def fraction(self):
        """Fraction of frequencies sampled."""
        return float(np.mean(self.keep))

    def has_dc(self):
        return bool(self.keep[0, 0])

    def is_symmetric(self):
        """Whether ``keep(k) == keep(-k mod (n, m))``."""
        return bool(np.array_equal(self.keep, negate_frequencies(self.keep)))


def negate_frequencies(a):
    """Reindex a frequency grid by ``k -> -k mod (n, m)``."""
    return np.roll(a[::-1, ::-1], 1, axis=(0, 1))


def radial_mask(n, m, lines):
    """
    Frequencies closest to ``lines`` equally spaced straight lines through DC,
    at angles ``k pi / lines`` for ``k = 0, ..., lines - 1``.

    Each line is rasterized by stepping its radius by half a pixel out to
    the corners of the frequency plane and rounding to the nearest
    frequency. The result is made conjugate symmetric and DC is always kept.
    """
    if not (int(lines) == lines and lines >= 1):
        raise ParameterError("`lines` must be a positive integer!")
    if not (n >= 1 and m >= 1):
        raise ParameterError("mask dimensions must be positive!")

    keep = np.zeros((n, m), dtype=bool)

    radius = np.ceil(np.hypot(n, m) / 2.)
    r = np.arange(-radius, radius + .25, .5)
    for theta in np.pi * np.arange(lines) / lines:
        kx = np.rint(r * np.cos(theta)).astype(int)
        ky = np.rint(r * np.sin(theta)).astype(int)
        inside = (np.abs(kx) <= m / 2) & (np.abs(ky) <= n / 2)
        keep[ky[inside] % n, kx[inside] % m] = True

    keep |= negate_frequencies(keep)
    keep[0, 0] = True

    return FourierMask(keep, line_count=int(lines))


def measure(u, mask):
    """
    Subsampled 2D DFT of ``u``: complex coefficients on the kept
    frequencies and zeros elsewhere.
    """
    u = _check_image(u)
    if u.shape != mask.shape:
        raise ParameterError(f"image shape {u.shape} does not match mask "
                             f"shape {mask.shape}!")
    return fft.fft2(u) * mask.keep


def back_project(f):
    """Real part of the inverse DFT of zero-filled frequency data."""
    return np.real(fft.ifft2(f))
