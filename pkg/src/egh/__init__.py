"""Hilbert functions over GF(p), lex-plus-powers ideals and EGH-type checks."""

from .algebra import Form, Monomial, Ordering, RingContext, form_mul, form_parse, form_print, lex_cmp, monomials_of_degree
from .graded import (ArtinQuotient, GradedBasis, QuotientTower, annihilator_dim, colon_piece,
                     hilbert_function, ideal_piece, span, subspace_dims)
from .lpp import DegreeVector, LppIdeal, lex_segment, lpp_defect, lpp_match_full, lpp_piece_dim, macaulay_bound
from .verify import IdealInstance, defect, is_regular_sequence

__version__ = "0.1.0"

__all__ = [
    "ArtinQuotient", "DegreeVector", "Form", "GradedBasis", "IdealInstance", "LppIdeal", "Monomial", "Ordering",
    "QuotientTower", "RingContext", "annihilator_dim", "colon_piece", "defect", "form_mul", "form_parse",
    "form_print", "hilbert_function", "ideal_piece", "is_regular_sequence", "lex_cmp", "lex_segment",
    "lpp_defect", "lpp_match_full", "lpp_piece_dim", "macaulay_bound", "monomials_of_degree", "span",
    "subspace_dims",
]
