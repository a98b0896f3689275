"""Directional Chebyshev constants and transfinite-diameter experiments."""

from .multiindex import (MultiIndex, Direction, as_multiindex, as_direction,
                         compare, enumerate_upto, basis_below, direction_sequence,
                         largest_remainder)
from .sets import (PointCloud, SetModel, PointBudgetError, generate, scale,
                   slice_and_project, shear, save_cloud, load_cloud)
from .minimax import (Polynomial, ChebyshevResult, monomial_matrix, monomial,
                      solve_minimax, tau, tch_reduce, leading_form, slope_polynomial)
from .lp import SolverError
from .fekete import (VdmConfig, DegenerateDirectionError, log_vdm, greedy_fekete,
                     delta_fekete, delta_zaharjuta)
from .pluripotential import (RobinModel, ExtremalGrid, robin_eval, k_rho_cloud,
                             extremal_numeric, default_candidate_grid, z_set)

__all__ = [
    "MultiIndex", "Direction", "as_multiindex", "as_direction", "compare",
    "enumerate_upto", "basis_below", "direction_sequence", "largest_remainder",
    "PointCloud", "SetModel", "PointBudgetError", "generate", "scale",
    "slice_and_project", "shear", "save_cloud", "load_cloud",
    "Polynomial", "ChebyshevResult", "monomial_matrix", "monomial",
    "solve_minimax", "tau", "tch_reduce", "leading_form", "slope_polynomial",
    "SolverError",
    "VdmConfig", "DegenerateDirectionError", "log_vdm", "greedy_fekete",
    "delta_fekete", "delta_zaharjuta",
    "RobinModel", "ExtremalGrid", "robin_eval", "k_rho_cloud",
    "extremal_numeric", "default_candidate_grid", "z_set",
]

__version__ = "0.1.0"
