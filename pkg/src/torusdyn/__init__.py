"""Cohomological dynamics of linear automorphisms of complex tori.

Exact arithmetic over Q(i) for cohomology and pullbacks, certified
enclosures for spectral radii, and tools for groups generated by such
automorphisms.
"""

from .automorphism import CAT_MAP, NotAnAutomorphism, TorusAut, block_diagonal
from .cohomology import CohomClass, TorusModel, integrate, kahler_class, nef_class, omega, wedge
from .degrees import (
    FiberedAut,
    RawModel,
    degree_profile,
    dynamical_degree,
    growth_limit_estimate,
    is_positive_entropy,
    product_formula_check,
    zero_entropy,
)
from .entropy_sim import TorusMap, entropy_estimate, separated_count
from .groups import MatrixGroup, common_eigenray, derived_series_probe, invariant_chain, phi_map, ping_pong_certificate
from .hodge import hr_degeneracy, hr_inequality, q_form, signature_check, whr_verify
from .intervals import Interval
from .linalg import ExactMatrix
from .spectral import RadiusBound, spectral_radius
from .units import TotallyRealField, fundamental_unit_quadratic, unit_search

__version__ = "0.1.0"

__all__ = [
    "CAT_MAP",
    "CohomClass",
    "ExactMatrix",
    "FiberedAut",
    "Interval",
    "MatrixGroup",
    "NotAnAutomorphism",
    "RadiusBound",
    "RawModel",
    "TorusAut",
    "TorusMap",
    "TorusModel",
    "TotallyRealField",
    "block_diagonal",
    "common_eigenray",
    "degree_profile",
    "derived_series_probe",
    "dynamical_degree",
    "entropy_estimate",
    "fundamental_unit_quadratic",
    "growth_limit_estimate",
    "hr_degeneracy",
    "hr_inequality",
    "integrate",
    "invariant_chain",
    "is_positive_entropy",
    "kahler_class",
    "nef_class",
    "omega",
    "phi_map",
    "ping_pong_certificate",
    "q_form",
    "separated_count",
    "signature_check",
    "spectral_radius",
    "product_formula_check",
    "unit_search",
    "wedge",
    "whr_verify",
    "zero_entropy",
]
