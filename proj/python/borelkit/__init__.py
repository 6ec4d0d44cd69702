"""Borel-Laplace toolkit for singularly perturbed Cauchy problems."""

from ._borelkit import (
    DomainError,
    WeightSeq,
    __version__,
    bfi_max_residual,
    bfi_solve,
    classify_flatness,
    config_hash,
    euler_coeff,
    euler_function,
    geometric_ladder,
    gevrey_check,
    run_theorem1,
    run_theorem2,
    sup_linear_minus_exp,
    sup_poly_exp,
    tahara_coeffs,
    validate_config,
    zeta,
)

__all__ = [
    "DomainError",
    "WeightSeq",
    "__version__",
    "bfi_max_residual",
    "bfi_solve",
    "classify_flatness",
    "config_hash",
    "euler_coeff",
    "euler_function",
    "geometric_ladder",
    "gevrey_check",
    "run_theorem1",
    "run_theorem2",
    "sup_linear_minus_exp",
    "sup_poly_exp",
    "tahara_coeffs",
    "validate_config",
    "zeta",
]
