"""Bose-Hubbard circuit complexity: mean field, Bogoliubov angles, complexity sums."""

from ._bhc import (
    InvalidArgument,
    NumericalError,
    c_closed_form,
    c_kappa_quadrature,
    compare_energy,
    complexity,
    cv_delta,
    diagonalize,
    fit,
    gas_c2_d3,
    locate_tip,
    mean_field,
    run_cli,
    two_mode_complexity,
)

__all__ = [
    "InvalidArgument",
    "NumericalError",
    "c_closed_form",
    "c_kappa_quadrature",
    "compare_energy",
    "complexity",
    "cv_delta",
    "diagonalize",
    "fit",
    "gas_c2_d3",
    "locate_tip",
    "mean_field",
    "run_cli",
    "two_mode_complexity",
]
__version__ = "0.1.0"
