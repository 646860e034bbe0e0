"""Clamped-plate buckling eigenvalues on annuli, the punctured disk, the
disk, and rectangles with mixed clamped/Navier edges."""

from .annulus import (
    Annulus,
    BranchPoint,
    FirstEigenvalueResult,
    RadialCoefficients,
    RadialProfile,
    count_radial_sign_changes,
    det_k,
    det_k0,
    det_punctured,
    disk_eigenvalue,
    first_eigenvalue,
    matrix_k,
    matrix_k0,
    matrix_punctured,
    nodal_domain_count,
    radial_coefficients,
    radial_eval,
    radial_profile,
    tau,
)
from .analysis import (
    AsymptoticFit,
    MonotonicityReport,
    TableRow,
    branches,
    fit_asymptotics,
    monotonicity_audit,
    radial_profiles,
    table1,
)
from .rectangle import (
    RectFirstResult,
    RectMode,
    find_ell_for_nodal_count,
    first_eigenvalue_rect,
    gamma_even,
    gamma_odd,
    h_profile,
    lambda_1m,
    minimize_lambda1_real,
    mode_gamma,
    phi,
)
from .specfun import BesselZero, bessel_deriv, bessel_j, bessel_j_zero, bessel_y

__version__ = "0.1.0"
