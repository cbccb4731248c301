"""Exact interval decompositions of quiver representations with infinite tails."""
from __future__ import annotations

from .exactalg import FieldSpec, Matrix, Subspace
from .quiver import QuiverShape, ShapeClass, TailDecl, analyze, classify, find_tails
from .repn import Representation, RayVertex, is_flei, strand_limit, transport, validate
from .line import LineRep, as_line
from .decompose import Barcode, decompose, rank_oracle, verify
from .tailreduce import check_tail, double, flei_theorem_check
from .roots import non_dynkin_witness, positive_roots, roots_bijection_check, tits

__version__ = "0.1.0"

__all__ = [
    "Barcode",
    "FieldSpec",
    "LineRep",
    "Matrix",
    "QuiverShape",
    "RayVertex",
    "Representation",
    "ShapeClass",
    "Subspace",
    "TailDecl",
    "analyze",
    "as_line",
    "check_tail",
    "classify",
    "decompose",
    "double",
    "find_tails",
    "flei_theorem_check",
    "is_flei",
    "non_dynkin_witness",
    "positive_roots",
    "rank_oracle",
    "roots_bijection_check",
    "strand_limit",
    "tits",
    "transport",
    "validate",
    "verify",
]
