"""Ideal membership in free di- and tri-algebras through Groebner-Shirshov bases.

Relations written with the operations ``|-``, ``-|`` and ``<>`` are embedded
into the free Lie (or associative) algebra on a doubled alphabet, completed
there, and the answers are read back on the subspace that models the free
di-/tri-algebra.
"""

from .symbols import Alphabet, Generator, InvalidAlphabet, double
from .lie_poly import LiePoly, bracket, to_nls_basis
from .assoc_poly import AssocPoly, expand_lie
from .gsb import GsbState, complete, normal_form, compositions, enumerate_reduced
from .replication import TriPoly, Membership, encode, phi, member, free_basis, replicate
from .textio import ParseError, parse_problem, parse_poly, parse_tri
from .oracle import member_oracle, ideal_span, free_dimension
from .envelopes import (
    MultTable,
    InvalidTable,
    validate_table,
    present_perp,
    present_minus,
    verify_perp_gsb,
    verify_minus_gsb,
    pbw_basis_minus,
)

__all__ = [
    "Alphabet",
    "Generator",
    "InvalidAlphabet",
    "double",
    "LiePoly",
    "bracket",
    "to_nls_basis",
    "AssocPoly",
    "expand_lie",
    "GsbState",
    "complete",
    "normal_form",
    "compositions",
    "enumerate_reduced",
    "TriPoly",
    "encode",
    "phi",
    "member",
    "free_basis",
    "replicate",
    "Membership",
    "ParseError",
    "parse_problem",
    "parse_poly",
    "parse_tri",
    "member_oracle",
    "ideal_span",
    "free_dimension",
    "MultTable",
    "InvalidTable",
    "validate_table",
    "present_perp",
    "present_minus",
    "verify_perp_gsb",
    "verify_minus_gsb",
    "pbw_basis_minus",
]

__version__ = "0.1.0"
