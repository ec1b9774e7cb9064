"""Exact checks of Ramanujan-type product identities and Landau-Ramanujan numerics."""

from .rational_core import (
    BigRational,
    DomainError,
    LinearForm,
    RationalPoly,
    exact_sqrt,
    isqrt,
    to_bigfloat,
)

__all__ = [
    "BigRational",
    "DomainError",
    "LinearForm",
    "RationalPoly",
    "exact_sqrt",
    "isqrt",
    "to_bigfloat",
]

__version__ = "0.1.0"
