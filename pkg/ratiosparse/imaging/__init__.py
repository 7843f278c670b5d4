from .operators import (FourierMask, back_project, div_adjoint, grad,
                        laplacian_symbol, measure, radial_mask)
from .phantom import shepp_logan
from .solvers import GradientADMM, GradSolverConfig, solve_grad, solve_tv

__all__ = [
    "FourierMask",
    "GradientADMM",
    "GradSolverConfig",
    "back_project",
    "div_adjoint",
    "grad",
    "laplacian_symbol",
    "measure",
    "radial_mask",
    "shepp_logan",
    "solve_grad",
    "solve_tv",
]
