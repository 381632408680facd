"""
H-eigenvalue computation: power iteration, sign-flip transfer, the brute-force
oracle and dimension-2 characteristic polynomials.
"""

from spectra.charpoly import CharPoly2, char_poly_dim2, spectra_equal_dim2, spectral_radius_dim2
from spectra.newton_oracle import brute_force_h_eigenpairs
from spectra.options import RhoEstimate, SolverOptions
from spectra.power_iteration import blockwise_rho, power_iteration_rho
from spectra.z_eigen import (
    AbsoluteComparison,
    compare_with_absolute,
    largest_h_eigenpair_nonnegative,
    largest_h_eigenvalue_z,
    rho_estimate,
    rows_vanish,
    sign_flip_eigenpair,
    transfer_witness,
)

__all__ = [
    "CharPoly2",
    "char_poly_dim2",
    "spectra_equal_dim2",
    "spectral_radius_dim2",
    "brute_force_h_eigenpairs",
    "RhoEstimate",
    "SolverOptions",
    "blockwise_rho",
    "power_iteration_rho",
    "AbsoluteComparison",
    "compare_with_absolute",
    "largest_h_eigenpair_nonnegative",
    "largest_h_eigenvalue_z",
    "rho_estimate",
    "rows_vanish",
    "sign_flip_eigenpair",
    "transfer_witness",
]
