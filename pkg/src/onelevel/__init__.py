"""Optimal test functions for bounding vanishing at the central point.

For each classical compact group the minimizer of the one-level density
functional is determined by the solution ``g`` of ``(I + K) g = 1`` on
``[-sigma, sigma]``.  This package solves that equation numerically and in
closed form, reduces it to ODEs on outer intervals, and derives bounds.
"""

from .analysis import (InfimumResult, Method, RankBoundReport, SweepRow, infimum, naive_bound,
                       phi_from_g, phi_hat_from_g, rank_bounds, soodd_from_sp, sweep)
from .closedform import (PiecewiseTrig, Segment, TrigTerm, apply_operator_exact, band2_g, band15_g,
                         closed_form_g, exact_integral, medium_g, orthogonal_g, tiny_g, unit_g)
from .estimator import OptimalTestFunction
from .fredholm import Grid, GridFunction, SingularSystemError, nystrom_matrix, nystrom_solve, residual_report
from .reduction import breakpoint_count, dimension, inner_expansion, interval_systems, outside_odes
from .symmetry import KernelSpec, SymmetryGroup, kernel_spec

__version__ = "0.1.0"

__all__ = [
    "InfimumResult", "Method", "RankBoundReport", "SweepRow", "infimum", "naive_bound", "phi_from_g",
    "phi_hat_from_g", "rank_bounds", "soodd_from_sp", "sweep", "PiecewiseTrig", "Segment", "TrigTerm",
    "apply_operator_exact", "band2_g", "band15_g", "closed_form_g", "exact_integral", "medium_g",
    "orthogonal_g", "tiny_g", "unit_g", "OptimalTestFunction", "Grid", "GridFunction",
    "SingularSystemError", "nystrom_matrix", "nystrom_solve", "residual_report", "breakpoint_count",
    "dimension", "inner_expansion", "interval_systems", "outside_odes", "KernelSpec", "SymmetryGroup",
    "kernel_spec",
]
