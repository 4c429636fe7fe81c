"""Hadamard–Howe map on monomial bases and the invariant P."""

from .basis import (
    SymBasisElement,
    basis,
    basis_size,
    basis_with_weight,
    weight_zero_basis,
    wreath_dimension,
)
from .hadamard import (
    ExactLinearMap,
    HermiteCheck,
    RankReport,
    hdn_apply,
    hdn_matrix,
    hermite_check,
    rank_report,
    weight_zero_matrix,
)
from .invariant import (
    KernelCheck,
    P_on_power,
    PInvariant,
    Pstar_coefficients,
    PStarVector,
    eval_P,
    kernel_check,
)

__all__ = [
    "ExactLinearMap",
    "HermiteCheck",
    "KernelCheck",
    "PInvariant",
    "PStarVector",
    "P_on_power",
    "Pstar_coefficients",
    "RankReport",
    "SymBasisElement",
    "basis",
    "basis_size",
    "basis_with_weight",
    "eval_P",
    "hdn_apply",
    "hdn_matrix",
    "hermite_check",
    "kernel_check",
    "rank_report",
    "weight_zero_basis",
    "weight_zero_matrix",
    "wreath_dimension",
]
