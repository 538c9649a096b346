"""Exact algebra for correlator-bracket expressions and the rational
linear system that pins down a codimension-3 relation among them."""

from .algebra import (
    N_UNKNOWNS,
    Expression,
    Scalar,
    coefficient_of,
    combine,
    evaluate,
    swap_ij_expression,
    symmetrize_ij,
)
from .catalog import (
    N_STRATA,
    basis,
    generic_E,
    load_basis,
    solution_table,
    theorem_coeffs,
    theorem_entries,
    theorem_rhs,
)
from .errors import (
    DataIntegrityError,
    GwisError,
    InvalidTermError,
    MissingUnknownError,
    ParseError,
    SolveError,
)
from .linsys import (
    ConstraintEquation,
    N_EQUATIONS,
    RationalMatrix,
    VerificationReport,
    assemble_matrix,
    bareiss_rank_and_kernel,
    equations,
    rank_and_kernel,
    residuals,
    solve_normalized,
    verify,
)
from .parsing import parse_expression, parse_term
from .printing import render, term_to_latex, term_to_plain, to_json, to_latex, to_plain
from .terms import Correlator, Insertion, Term, canonicalize, equal, swap_ij, validate

__version__ = "0.1.0"

__all__ = [
    "Correlator", "ConstraintEquation", "DataIntegrityError", "Expression",
    "GwisError", "Insertion", "InvalidTermError", "MissingUnknownError",
    "N_EQUATIONS", "N_STRATA", "N_UNKNOWNS", "ParseError", "RationalMatrix",
    "Scalar", "SolveError", "Term", "VerificationReport", "assemble_matrix",
    "bareiss_rank_and_kernel", "basis", "canonicalize", "coefficient_of",
    "combine", "equal", "equations", "evaluate", "generic_E", "load_basis",
    "parse_expression", "parse_term", "rank_and_kernel", "render", "residuals",
    "solution_table", "solve_normalized", "swap_ij", "swap_ij_expression",
    "symmetrize_ij", "term_to_latex", "term_to_plain", "theorem_coeffs",
    "theorem_entries", "theorem_rhs", "to_json", "to_latex", "to_plain",
    "validate", "verify",
]
