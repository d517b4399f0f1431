"""Exact Poisson and Weyl algebra, quantization maps and their obstructions."""

__version__ = "0.1.0"

from .lie import (
    SubalgebraSpec,
    SymplecticMatrix,
    apply_linear_symplectic,
    bracket_generate,
    classify_quadratic_span,
    closure_check,
    membership,
)
from .obstruction import (
    check_dirac,
    closed_form,
    extension_infeasibility,
    groenewold_certificate,
    scalar_ambiguity_solve,
    sigma_recursion_check,
)
from .poly import Monomial, Polynomial, homogeneous_part, monomial_basis, parse_polynomial, poisson_bracket
from .quantize import QuantizationMap, apply_map, metaplectic, schrodinger, sigma_eta, vn_extend, weyl_map
from .scalars import GaussianRational, HScalar, QuadraticNumber
from .weyl import WeylElement, commutator, formal_adjoint, is_central, principal_symbol, symmetrize, weyl_mul


__all__ = [
    "SubalgebraSpec",
    "SymplecticMatrix",
    "apply_linear_symplectic",
    "bracket_generate",
    "classify_quadratic_span",
    "closure_check",
    "membership",
    "check_dirac",
    "closed_form",
    "extension_infeasibility",
    "groenewold_certificate",
    "scalar_ambiguity_solve",
    "sigma_recursion_check",
    "Monomial",
    "Polynomial",
    "homogeneous_part",
    "monomial_basis",
    "parse_polynomial",
    "poisson_bracket",
    "QuantizationMap",
    "apply_map",
    "metaplectic",
    "schrodinger",
    "sigma_eta",
    "vn_extend",
    "weyl_map",
    "GaussianRational",
    "HScalar",
    "QuadraticNumber",
    "WeylElement",
    "commutator",
    "formal_adjoint",
    "is_central",
    "principal_symbol",
    "symmetrize",
    "weyl_mul",
]
