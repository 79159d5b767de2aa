"""Perturbative and exact solvers for layered Sturm-Liouville eigenproblems."""

from .basis import ZerothMode, reduced_green, zeroth_modes
from .greens import gf_lambda0, g0_diag_integral, ground_state_fg
from .oracle import OracleResult, closed_form_half, determinant, exact_eigenvalues
from .perturbation import (LOGARITHM, XI2, PTSeries, matrix_element, pt_eigenfunction,
                           pt_lambda, pt_lambda_eps_series)
from .problem import (BoundarySpec, LayeredCoefficient, SLProblem,
                      SmoothFamilyCoefficient, ValidatedProblem,
                      canonical_benchmark, validate_problem)
from .transform import TransformedProblem, harmonize, transform, xi2, z_map

__all__ = [
    "BoundarySpec", "LayeredCoefficient", "LOGARITHM", "OracleResult", "PTSeries",
    "SLProblem", "SmoothFamilyCoefficient", "TransformedProblem", "ValidatedProblem",
    "XI2", "ZerothMode", "canonical_benchmark", "closed_form_half", "determinant",
    "exact_eigenvalues", "g0_diag_integral", "gf_lambda0", "ground_state_fg",
    "harmonize", "matrix_element", "pt_eigenfunction", "pt_lambda",
    "pt_lambda_eps_series", "reduced_green", "transform", "validate_problem",
    "xi2", "z_map",
]

__version__ = "0.1.0"
