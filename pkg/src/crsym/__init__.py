"""Exact computation and classification of infinitesimal CR symmetries of
polynomial models ``Im w = P(z, conj z)`` in C^3."""
from .algebra import GaussRat, HoloField, MixedPoly, lie_bracket
from .classify import ClassificationRow, detect_exotic, match_table_row, split_components
from .errors import CRSymError, InputError, InternalInconsistency
from .parser import parse_field, parse_polynomial
from .report import analyze
from .tangency import GradedAlgebra, compute_symmetry_algebra, is_symmetry, tangency_residual
from .weights import Weight, infer_multitype_weights

__version__ = "0.1.0"

__all__ = [
    "ClassificationRow",
    "CRSymError",
    "GaussRat",
    "GradedAlgebra",
    "HoloField",
    "InputError",
    "InternalInconsistency",
    "MixedPoly",
    "Weight",
    "analyze",
    "compute_symmetry_algebra",
    "detect_exotic",
    "infer_multitype_weights",
    "is_symmetry",
    "lie_bracket",
    "match_table_row",
    "parse_field",
    "parse_polynomial",
    "split_components",
    "tangency_residual",
]
