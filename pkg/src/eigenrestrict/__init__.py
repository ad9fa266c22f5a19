"""Numerical laboratory for eigenfunction restriction estimates.

Explicit Laplace eigenfunction families on round spheres and the flat torus,
restricted L^p norms along curves and great subspheres, growth-exponent fits
against the sharp theoretical exponents, and direct verification of the
oscillatory-integral machinery (kernel decay, phase expansions, the caustic
model operator) behind them.
"""

from .geometry import (CurveKind, CurveSpec, QuadratureGrid, curve_grid,
                       equator, exp_map, great_subsphere, latitude_circle,
                       sphere_distance, sphere_grid)
from .harmonics import (AssocHarmonic, Averaged, HighestWeight, TorusSum,
                        Zonal, eigenvalue)
from .oscillatory import (AirySpec, KernelSpec, airy_operator_norm,
                          critical_points, kernel_K, phase_expansion_fit,
                          verify_kernel_bound)
from .restriction import (ExponentFit, NormSample, envelope_check,
                          fit_exponent, geometric_degrees, lp_norm_on_curve,
                          sweep, theoretical_exponent, turning_point_sweep)
from .torus import (divisor_growth, r2_table, random_eigenfunction,
                    representations, verify_linfty_bound)

__all__ = [
    "AirySpec", "AssocHarmonic", "Averaged", "CurveKind", "CurveSpec",
    "ExponentFit", "HighestWeight", "KernelSpec", "NormSample",
    "QuadratureGrid", "TorusSum", "Zonal", "airy_operator_norm",
    "critical_points", "curve_grid", "divisor_growth", "eigenvalue",
    "envelope_check", "equator", "exp_map", "fit_exponent",
    "geometric_degrees", "great_subsphere", "kernel_K", "latitude_circle",
    "lp_norm_on_curve", "phase_expansion_fit", "r2_table",
    "random_eigenfunction", "representations", "sphere_distance",
    "sphere_grid", "sweep", "theoretical_exponent", "turning_point_sweep",
    "verify_kernel_bound", "verify_linfty_bound",
]

__version__ = "0.1.0"
