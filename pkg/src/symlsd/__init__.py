"""Limiting spectral distribution of symmetrized lag-tau auto-cross covariance matrices.

The package computes the limit law of the Hermitian symmetrization of the
lag-tau sample auto-covariance of high-dimensional noise: its density, CDF,
atom, support, and Stieltjes transform, together with the random-matrix
ensemble itself for Monte Carlo validation.
"""

from .ensemble import (
    COMPLEX_GAUSSIAN,
    RADEMACHER,
    REAL_GAUSSIAN,
    EntryDistribution,
    build_c,
    build_m,
    c_spectrum_closed,
    hermitian_eigs,
    mix64,
    sample_data,
    simulate_esd,
)
from .laws import (
    CompanionTransforms,
    LimitLaw,
    PsiBranch,
    StieltjesPoint,
    arcsine_cdf,
    arcsine_pdf,
    companion_transforms,
    density_via_inversion,
    limit_law,
    lsd_cdf,
    lsd_cdf_interpolant,
    mp_atom,
    mp_cdf,
    mp_pdf,
    mp_support,
    phi_density,
    psi,
    self_consistency_residual,
    stieltjes,
    stieltjes_grid,
    stieltjes_real,
)
from .roots import Cubic, SupportSolution, solve_cubic, support_endpoint, support_solution, y0, y1
from .stats import EmpiricalCdf, KsReport, arcsine_expectation, ks_distance, quad

__version__ = "0.1.0"

__all__ = [
    "COMPLEX_GAUSSIAN", "RADEMACHER", "REAL_GAUSSIAN", "EntryDistribution",
    "build_c", "build_m", "c_spectrum_closed", "hermitian_eigs", "mix64",
    "sample_data", "simulate_esd",
    "CompanionTransforms", "LimitLaw", "PsiBranch", "StieltjesPoint",
    "arcsine_cdf", "arcsine_pdf", "companion_transforms",
    "density_via_inversion", "limit_law", "lsd_cdf", "lsd_cdf_interpolant",
    "mp_atom", "mp_cdf", "mp_pdf", "mp_support", "phi_density", "psi",
    "self_consistency_residual", "stieltjes", "stieltjes_grid",
    "stieltjes_real",
    "Cubic", "SupportSolution", "solve_cubic", "support_endpoint",
    "support_solution", "y0", "y1",
    "EmpiricalCdf", "KsReport", "arcsine_expectation", "ks_distance", "quad",
    "__version__",
]
