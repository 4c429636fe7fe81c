"""Exact arithmetic substrate: permutations, sparse rational polynomials, elimination."""

from .linalg import bareiss_rank, exact_det
from .permutation import Permutation, PermutationError, all_permutations, sign
from .poly import (
    MultiIndex,
    SparsePoly,
    VariableSpace,
    all_entries_monomial,
    apolar_pair,
    det_poly,
    eval_poly,
    perm_poly,
    poly_pow,
)

__all__ = [
    "MultiIndex",
    "Permutation",
    "PermutationError",
    "SparsePoly",
    "VariableSpace",
    "all_entries_monomial",
    "all_permutations",
    "apolar_pair",
    "bareiss_rank",
    "det_poly",
    "eval_poly",
    "exact_det",
    "perm_poly",
    "poly_pow",
    "sign",
]
