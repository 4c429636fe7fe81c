"""Latin squares: enumeration, signed censuses and determinant-power tilings."""

from .enumeration import (
    SignedCensus,
    at_difference,
    census,
    col_difference,
    enumerate_squares,
    huang_rota_verify,
    naive_census,
)
from .squares import LatinSquare, LatinSquareError, SignTriple, sign_data
from .tilings import det_power_coefficient

__all__ = [
    "LatinSquare",
    "LatinSquareError",
    "SignTriple",
    "SignedCensus",
    "at_difference",
    "census",
    "col_difference",
    "det_power_coefficient",
    "enumerate_squares",
    "huang_rota_verify",
    "naive_census",
    "sign_data",
]
