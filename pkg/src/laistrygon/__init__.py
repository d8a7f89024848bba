"""Exact computations in the graded algebras generated by x1, x2, z_0..z_G."""

from __future__ import annotations

from .errors import (
    BudgetExceeded,
    CheckFailure,
    InvalidSpec,
    LaistrygonError,
    NotOnVariety,
    ParseError,
    PreconditionError,
    Unsupported,
)
from .pbw_engine import (
    AlgebraParams,
    NCPoly,
    RewriteSystem,
    confluence_check,
    hilbert_coeffs,
    hilbert_series_oracle,
    normal_form,
    parse_element,
    verify_derived_identities,
)
from .report import Check, Report
from .scalars import FieldElem, MultiPoly, QSpec, parse_scalar

__version__ = "0.1.0"

__all__ = [
    "AlgebraParams",
    "BudgetExceeded",
    "Check",
    "CheckFailure",
    "FieldElem",
    "InvalidSpec",
    "LaistrygonError",
    "MultiPoly",
    "NCPoly",
    "NotOnVariety",
    "ParseError",
    "PreconditionError",
    "QSpec",
    "Report",
    "RewriteSystem",
    "Unsupported",
    "confluence_check",
    "hilbert_coeffs",
    "hilbert_series_oracle",
    "normal_form",
    "parse_element",
    "parse_scalar",
    "verify_derived_identities",
]
