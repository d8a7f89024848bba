"""Exact coefficient arithmetic."""

from .field import FieldElem, QSpec, binomial, field_arith, random_elem
from .multipoly import MultiPoly, partial_fraction_identity
from .parse import parse_scalar

__all__ = [
    "FieldElem",
    "MultiPoly",
    "QSpec",
    "binomial",
    "field_arith",
    "parse_scalar",
    "partial_fraction_identity",
    "random_elem",
]
