"""
Image reconstruction from subsampled Fourier data by ADMM on the gradient.

The ratio model minimizes ``||grad u||_1 / ||grad u||_2`` and the TV baseline
``||grad u||_1``, both with ``u`` in ``[0, 1]`` and the data ``A u = f``
(``A`` the masked DFT) enforced through the penalty ``lambda`` and its dual.
Unlike the signal solver, ``u`` is therefore only feasible in the limit.
"""
import logging

import numpy as np

from dataclasses import dataclass
from typing import Optional

from scipy import fft

from ..exceptions import ParameterError
from ..math import l1_norm, objective, shrink
from ..rng import check_random_state
from ..solvers.base import SolveReport, Status
from ..solvers.ratio import y_update
from .operators import back_project, div_adjoint, grad, laplacian_symbol

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GradSolverConfig:
    """
    Parameters of the gradient-domain solvers.

    ``rho1`` penalizes ``d = grad u`` (numerator), ``rho2`` penalizes
    ``h = grad u`` (denominator, unused by TV) and ``rho3`` penalizes
    ``v = u`` (box). ``check_every`` sets how often the Fourier-domain
    linear solve is verified against the spatial operator.
    """
    lambd: float = 1e3
    rho1: float = 1.
    rho2: float = 1.
    rho3: float = 1.
    eps: float = 1e-8
    max_iter: int = 5000
    check_every: int = 50
    log_every: int = 100
    seed: Optional[int] = None

    def __post_init__(self):
        for name in ("lambd", "rho1", "rho2", "rho3", "eps"):
            if not getattr(self, name) > 0.:
                raise ParameterError(f"`{name}` must be positive!")
        for name in ("max_iter", "check_every", "log_every"):
            if not getattr(self, name) >= 1:
                raise ParameterError(f"`{name}` must be a positive integer!")


class GradientADMM:
    """
    ADMM for gradient-domain sparsity with either the L1/L2 ratio or the
    plain L1 norm on the gradient.

    Parameters
    ----------
    config : GradSolverConfig, optional
    ratio : bool
        If False, drop the denominator and its splitting variable, which
        gives the anisotropic TV model.
    """

    def __init__(self, config=None, ratio=True):
        self.config = GradSolverConfig() if config is None else config
        self.ratio = ratio

    def _check_data(self, f, mask):

        if not mask.has_dc():
            raise ParameterError("mask must sample the DC frequency!")
        if not mask.is_symmetric():
            raise ParameterError("mask must be conjugate symmetric to "
                                 "reconstruct a real image!")

        f = np.asarray(f, dtype="complex128")
        if f.shape != mask.shape:
            raise ParameterError(f"data shape {f.shape} does not match mask "
                                 f"shape {mask.shape}!")
        if np.any(f[~mask.keep]):
            raise ParameterError("data must vanish off the mask!")

        return f

    def system_residual(self, u, rhs, S):
        """
        Relative residual of the u-update's normal equations, evaluated in
        the spatial domain.
        """
        config = self.config
        n, m = u.shape
        rho = config.rho1 + (config.rho2 if self.ratio else 0.)
        lhs = config.lambd * n * m * back_project(S * fft.fft2(u)) \
            + rho * div_adjoint(grad(u)) + config.rho3 * u
        return float(np.linalg.norm(lhs - rhs) / np.linalg.norm(rhs))

    def solve(self, f, mask, callback=None):
        """
        Reconstruct an image from the frequency data ``f``, as produced by
        `measure`.

        Returns
        -------
        SolveReport
            ``x`` is the final image ``u``; ``final_v`` is its clamped copy.
        """
        config = self.config
        f = self._check_data(f, mask)
        n, m = mask.shape
        nm = n * m

        S = mask.keep.astype("float64")
        L = laplacian_symbol(n, m)
        lambd, rho1, rho2, rho3 = \
            config.lambd, config.rho1, config.rho2, config.rho3
        rho = rho1 + (rho2 if self.ratio else 0.)
        denominator = lambd * nm * S + rho * L + rho3

        random_state = check_random_state(config.seed)

        u = back_project(f)
        grad_u = grad(u)
        v = np.clip(u, 0., 1.)
        d = grad_u.copy()
        h = grad_u.copy()
        b = np.zeros_like(grad_u)
        g = np.zeros_like(grad_u)
        w = np.zeros_like(f)
        e = np.zeros_like(u)

        norm_f = np.linalg.norm(f)

        objective_history = []
        feasibility_history = []
        residual_y = []
        residual_z = []
        rel_change_history = []
        system_residuals = []

        status = Status.MAX_ITER
        for k in range(1, config.max_iter + 1):

            spatial = rho1 * div_adjoint(d - b) + rho3 * (v - e)
            if self.ratio:
                spatial += rho2 * div_adjoint(h - g)
            u_hat = (lambd * nm * (f + w) + fft.fft2(spatial)) / denominator
            u_new = np.real(fft.ifft2(u_hat))

            if k % config.check_every == 0:
                rhs = lambd * nm * back_project(f + w) + spatial
                system_residuals.append(
                    self.system_residual(u_new, rhs, S))

            grad_u = grad(u_new)
            v = np.clip(u_new + e, 0., 1.)

            if self.ratio:
                h = y_update(l1_norm(d), grad_u + g, rho2,
                             random_state=random_state)
                eta = np.linalg.norm(h)
                nu = 1. / (rho1 * eta) if eta > 0. else np.inf
            else:
                nu = 1. / rho1
            d = shrink(grad_u + b, nu)

            b += grad_u - d
            if self.ratio:
                g += grad_u - h
            data_residual = f - S * fft.fft2(u_new)
            w += data_residual
            e += u_new - v

            norm_u = np.linalg.norm(u_new)
            change = np.linalg.norm(u_new - u)
            rel_change = change / norm_u if norm_u > 0. else change
            u = u_new

            objective_history.append(objective(grad_u) if self.ratio
                                     else l1_norm(grad_u))
            feasibility_history.append(np.linalg.norm(data_residual))
            residual_y.append(np.linalg.norm(grad_u - h) if self.ratio
                              else 0.)
            residual_z.append(np.linalg.norm(grad_u - d))
            rel_change_history.append(rel_change)

            if callback is not None:
                callback(u)

            if k % config.log_every == 0:
                logger.debug(f"[Iteration {k:05d}: "
                             f"objective={objective_history[-1]:.6f}] "
                             f"data residual: "
                             f"{feasibility_history[-1] / norm_f:.3E}, "
                             f"relative change: {rel_change:.3E}")

            if k >= 2 and rel_change <= config.eps:
                status = Status.CONVERGED
                break

        message = "relative change below tolerance" \
            if status is Status.CONVERGED else "maximum number of iterations"
        fun = objective_history[-1]
        logger.info(f"[{'L1/L2' if self.ratio else 'TV'}-grad ADMM: "
                    f"objective={fun:.6f}] iterations: {k:05d}, "
                    f"status: {status} ({message})")

        return SolveReport(x=u, fun=fun, nit=k, status=status,
                           success=status is Status.CONVERGED,
                           message=message, final_v=v,
                           objective_history=np.array(objective_history),
                           feasibility_history=np.array(feasibility_history),
                           residual_y=np.array(residual_y),
                           residual_z=np.array(residual_z),
                           rel_change_history=np.array(rel_change_history),
                           system_residuals=np.array(system_residuals))


def solve_grad(f, mask, config=None, callback=None):
    """L1/L2 on the gradient."""
    return GradientADMM(config, ratio=True).solve(f, mask, callback=callback)


def solve_tv(f, mask, config=None, callback=None):
    """L1 on the gradient (anisotropic TV)."""
    return GradientADMM(config, ratio=False).solve(f, mask, callback=callback)
