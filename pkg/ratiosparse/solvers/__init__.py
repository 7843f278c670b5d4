from .base import (Init, ProjectionCache, SolverConfig, SolveReport, Status,
                   best_report, multi_start, project_affine)
from .basis_pursuit import solve_l1_init
from .ratio import solve, solve_multi_start, y_update, z_update

__all__ = [
    "Init",
    "ProjectionCache",
    "SolverConfig",
    "SolveReport",
    "Status",
    "best_report",
    "multi_start",
    "project_affine",
    "solve",
    "solve_l1_init",
    "solve_multi_start",
    "y_update",
    "z_update",
]
