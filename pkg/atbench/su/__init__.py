"""Haar sampling on SU(n) and Monte-Carlo estimates of its integrals."""

from .estimate import MCEstimate
from .haar import haar_su, haar_su_batch
from .integrals import (
    ProjectionEstimate,
    RatioReport,
    cosine_similarity,
    mc_entry_product,
    mc_perm_power,
    mc_projection_power,
    projection_alignment,
    ratio_consistency,
)
from .permanent import permanent, permanent_batch

__all__ = [
    "MCEstimate",
    "ProjectionEstimate",
    "RatioReport",
    "cosine_similarity",
    "haar_su",
    "haar_su_batch",
    "mc_entry_product",
    "mc_perm_power",
    "mc_projection_power",
    "permanent",
    "permanent_batch",
    "projection_alignment",
    "ratio_consistency",
]
