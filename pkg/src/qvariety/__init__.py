"""Exact arithmetic and constructions for real algebraic sets defined over the rationals."""
from __future__ import annotations

from qvariety.errors import (CertificateError, DimensionMismatch, NotOnVariety, ParseError, PreconditionError,
                             QVarietyError)
from qvariety.kernels import IMPLEMENTATION as KERNELS
from qvariety.qset import QAlgebraicSet, QRegularMap
from qvariety.ratpoly import Interval, Poly, format_poly, parse_poly, poly_eval

__version__ = "0.1.0"

__all__ = [
    "KERNELS", "Interval", "Poly", "QAlgebraicSet", "QRegularMap",
    "format_poly", "parse_poly", "poly_eval",
    "QVarietyError", "DimensionMismatch", "ParseError", "PreconditionError", "NotOnVariety", "CertificateError",
]
