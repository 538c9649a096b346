"""Embedded catalogs: basis strata, reference solution, displayed relation.

All catalogs are parsed from the data files at first use and cached per
data directory; they are immutable afterwards, so concurrent readers are
safe.  ``data_dir=None`` selects the files bundled with the package; a
path selects a directory with the same file names (used by the CLI's
--data-dir override and by negative tests).
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .algebra import Expression, Scalar
from .errors import DataIntegrityError, GwisError
from .parsing import parse_expression, parse_term
from .terms import Term

N_STRATA = 30

STRATA_FILE = "strata.gwis"
SOLUTION_FILE = "solution.json"
THEOREM_FILE = "theorem.gwis"
EQUATIONS_FILE = "equations.json"


def read_data_text(name: str, data_dir=None) -> str:
    if data_dir is None:
        return (resources.files("gwis") / "data" / name).read_text(encoding="utf-8")
    path = Path(data_dir) / name
    if not path.is_file():
        raise DataIntegrityError(f"data file {path} not found")
    return path.read_text(encoding="utf-8")


def _cached_per_bundle(loader):
    """Cache results for the bundled data only; explicit dirs always reload.

    Override directories are mutable (negative tests swap files in place),
    so only ``data_dir=None`` may be memoized.
    """
    bundled = lru_cache(maxsize=None)(lambda: loader(None))

    def wrapper(data_dir=None):
        return bundled() if data_dir is None else loader(str(data_dir))

    return wrapper


def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as err:
        raise DataIntegrityError(f"bad rational {text!r}: {err}") from None


def _load_strata(key) -> dict[int, Term]:
    entries: dict[int, Term] = {}
    for lineno, line in _data_lines(read_data_text(STRATA_FILE, key)):
        head, sep, body = line.partition(":")
        if not sep or not head.strip().isdigit():
            raise DataIntegrityError(f"{STRATA_FILE}:{lineno}: expected 'k: <term>'")
        k = int(head)
        if k in entries:
            raise DataIntegrityError(f"{STRATA_FILE}:{lineno}: duplicate key {k}")
        try:
            entries[k] = parse_term(body)
        except GwisError as err:
            raise DataIntegrityError(f"{STRATA_FILE}:{lineno}: {err}") from None
    if sorted(entries) != list(range(1, N_STRATA + 1)):
        raise DataIntegrityError(
            f"{STRATA_FILE}: expected keys 1..{N_STRATA}, got {sorted(entries)}"
        )
    if len(set(entries.values())) != N_STRATA:
        dupes = sorted(
            k for k, t in entries.items()
            if sum(1 for t2 in entries.values() if t2 == t) > 1
        )
        raise DataIntegrityError(f"{STRATA_FILE}: entries {dupes} coincide after canonicalization")
    return entries


_basis = _cached_per_bundle(_load_strata)


def load_basis(data_dir=None) -> dict[int, Term]:
    """All 30 basis strata as canonical terms, keyed 1..30."""
    return dict(_basis(data_dir))


def basis(k: int, data_dir=None) -> Term:
    """Canonical term of basis stratum k."""
    table = _basis(data_dir)
    if k not in table:
        raise ValueError(f"basis index {k} outside 1..{N_STRATA}")
    return table[k]


def generic_E(data_dir=None) -> Expression:
    """The generic combination sum_k c_k * (stratum k)."""
    return Expression(
        (term, Scalar.unknown(k)) for k, term in _basis(data_dir).items()
    )


def _load_solution(key) -> dict[int, Fraction]:
    try:
        raw = json.loads(read_data_text(SOLUTION_FILE, key))
    except json.JSONDecodeError as err:
        raise DataIntegrityError(f"{SOLUTION_FILE}: {err}") from None
    values = {int(k): parse_fraction(v) for k, v in raw.items()}
    if sorted(values) != list(range(1, N_STRATA + 1)):
        raise DataIntegrityError(f"{SOLUTION_FILE}: expected keys 1..{N_STRATA}")
    if values[1] != -1:
        raise DataIntegrityError(f"{SOLUTION_FILE}: normalization requires value -1 at key 1")
    return values


_solution = _cached_per_bundle(_load_solution)


def solution_table(data_dir=None) -> dict[int, Fraction]:
    """The reference coefficient table, normalized to -1 at index 1."""
    return dict(_solution(data_dir))


def _load_theorem(key) -> tuple[tuple[Fraction, Term], ...]:
    entries = []
    for lineno, line in _data_lines(read_data_text(THEOREM_FILE, key)):
        coeff_text, sep, term_text = line.partition("*")
        if not sep:
            raise DataIntegrityError(f"{THEOREM_FILE}:{lineno}: expected 'coeff * <term>'")
        coeff = parse_fraction(coeff_text.strip())
        if coeff < 0:
            raise DataIntegrityError(f"{THEOREM_FILE}:{lineno}: displayed coefficients are non-negative")
        try:
            entries.append((coeff, parse_term(term_text)))
        except GwisError as err:
            raise DataIntegrityError(f"{THEOREM_FILE}:{lineno}: {err}") from None
    return tuple(entries)


_theorem = _cached_per_bundle(_load_theorem)


def theorem_entries(data_dir=None) -> list[tuple[Fraction, Term]]:
    """Displayed (coefficient, term) pairs in display order, zero entry included."""
    return list(_theorem(data_dir))


def theorem_coeffs(data_dir=None) -> dict[int, Fraction]:
    """Displayed coefficients keyed by the basis index each term matches."""
    strata = _basis(data_dir)
    by_term = {term: k for k, term in strata.items()}
    coeffs: dict[int, Fraction] = {}
    for coeff, term in _theorem(data_dir):
        k = by_term.get(term)
        if k is None:
            raise DataIntegrityError(f"{THEOREM_FILE}: term matches no basis stratum: {term}")
        if k in coeffs:
            raise DataIntegrityError(f"{THEOREM_FILE}: basis stratum {k} matched twice")
        coeffs[k] = coeff
    if sorted(coeffs) != list(range(2, N_STRATA + 1)):
        raise DataIntegrityError(f"{THEOREM_FILE}: expected one entry per stratum 2..{N_STRATA}")
    return coeffs


def theorem_rhs(data_dir=None) -> Expression:
    """The displayed right-hand side as an expression (zero entry drops out)."""
    return Expression((term, coeff) for coeff, term in _theorem(data_dir))
