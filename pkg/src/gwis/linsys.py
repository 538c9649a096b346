"""The 49-row constraint system: exact rank, kernel, solve, verification.

Two independent elimination routines are kept side by side on purpose:
ordinary rational Gaussian elimination (pivot chosen by largest numerator
magnitude) and fraction-free Bareiss elimination over scaled integer rows
(first nonzero pivot).  Verification requires their ranks and kernels to
agree exactly, so a defect in either path is caught by the other.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import catalog
from .algebra import N_UNKNOWNS, Expression, Scalar
from .catalog import parse_fraction, read_data_text
from .errors import DataIntegrityError, GwisError, SolveError
from .parsing import parse_term
from .printing import fraction_str, term_to_plain
from .terms import Term

N_EQUATIONS = 49
EXPECTED_RANK = 29  # one relation, unique up to scale


@dataclass(frozen=True)
class ConstraintEquation:
    ordinal: int
    label: Term                      # output-basis vector whose coefficient vanishes
    form: Scalar                     # homogeneous linear form in c1..c30
    printed_form: Scalar | None = None   # as-printed form when it differs from `form`
    note: str | None = None


def _scalar_from_payload(payload, where: str) -> Scalar:
    if not isinstance(payload, dict) or "unknowns" not in payload:
        raise DataIntegrityError(f"{where}: form must be an object with 'unknowns'")
    const = parse_fraction(payload.get("const", "0"))
    coeffs = {}
    for key, value in payload["unknowns"].items():
        if not str(key).isdigit() or not 1 <= int(key) <= N_UNKNOWNS:
            raise DataIntegrityError(f"{where}: bad unknown index {key!r}")
        coeffs[int(key)] = parse_fraction(value)
    scalar = Scalar(const, coeffs)
    if scalar.const != 0:
        raise DataIntegrityError(f"{where}: form is not homogeneous (constant {scalar.const})")
    return scalar


def _load_equations(key) -> tuple[ConstraintEquation, ...]:
    try:
        raw = json.loads(read_data_text(catalog.EQUATIONS_FILE, key))
    except json.JSONDecodeError as err:
        raise DataIntegrityError(f"{catalog.EQUATIONS_FILE}: {err}") from None
    entries = raw.get("equations")
    if not isinstance(entries, list):
        raise DataIntegrityError(f"{catalog.EQUATIONS_FILE}: missing 'equations' list")
    if len(entries) != N_EQUATIONS:
        raise DataIntegrityError(
            f"{catalog.EQUATIONS_FILE}: expected {N_EQUATIONS} equations, found {len(entries)}"
        )
    out = []
    for pos, entry in enumerate(entries, start=1):
        where = f"{catalog.EQUATIONS_FILE}: equation #{pos}"
        if entry.get("ordinal") != pos:
            raise DataIntegrityError(f"{where}: ordinal {entry.get('ordinal')} out of sequence")
        try:
            label = parse_term(entry["label"])
        except GwisError as err:
            raise DataIntegrityError(f"{where}: unparseable label: {err}") from None
        except KeyError:
            raise DataIntegrityError(f"{where}: missing label") from None
        if not any(lab in ("i", "j") for lab in label.labels()):
            raise DataIntegrityError(f"{where}: label carries neither half-edge i nor j")
        form = _scalar_from_payload(entry.get("form"), where)
        printed = entry.get("printed_form")
        printed_form = None if printed is None else _scalar_from_payload(printed, where)
        if printed_form == form:
            printed_form = None
        out.append(ConstraintEquation(pos, label, form, printed_form, entry.get("note")))
    return tuple(out)


_equations = catalog._cached_per_bundle(_load_equations)


def equations(data_dir=None) -> tuple[ConstraintEquation, ...]:
    """All 49 constraint equations in order of appearance."""
    return _equations(data_dir)


class RationalMatrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("matrix rows must be non-empty and of equal length")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.rows == other.rows


def assemble_matrix(eqs) -> RationalMatrix:
    """Row r, column k-1 holds the coefficient of c_k in equation r+1."""
    return RationalMatrix(
        [[eq.form.coeffs.get(k, Fraction(0)) for k in range(1, N_UNKNOWNS + 1)] for eq in eqs]
    )


def rank_and_kernel(matrix: RationalMatrix):
    """Exact rank and kernel basis via rational Gauss-Jordan elimination.

    Pivot rows are chosen by largest |numerator| in the pivot column; the
    matrix is reduced fully, so each free column yields the canonical kernel
    vector with 1 in that column and pivot entries read off directly.
    """
    m = [list(row) for row in matrix.rows]
    nrows, ncols = matrix.nrows, matrix.ncols
    pivot_cols = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        candidates = [r for r in range(row, nrows) if m[r][col] != 0]
        if not candidates:
            continue
        piv = max(candidates, key=lambda r: abs(m[r][col].numerator))
        m[row], m[piv] = m[piv], m[row]
        pv = m[row][col]
        m[row] = [x / pv for x in m[row]]
        for r in range(nrows):
            if r != row and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        pivot_cols.append(col)
        row += 1
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    kernel = []
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivot_cols):
            vec[pc] = -m[r][fc]
        kernel.append(tuple(vec))
    return len(pivot_cols), kernel


def bareiss_rank_and_kernel(matrix: RationalMatrix):
    """Exact rank and kernel via fraction-free Bareiss elimination.

    Rows are scaled to integers first (scaling never changes rank or
    kernel); elimination stays in exact integer arithmetic and uses the
    first nonzero pivot, a deliberately different choice from the rational
    path.  The kernel is recovered by back substitution on the echelon
    form, normalized the same way as the rational path (unit entry at each
    free column), so agreeing systems produce identical bases.
    """
    m = []
    for row in matrix.rows:
        scale = lcm(*(x.denominator for x in row)) if row else 1
        m.append([int(x * scale) for x in row])
    nrows, ncols = matrix.nrows, matrix.ncols
    pivots = []  # (row, col) in elimination order
    prev = 1
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        piv = next((r for r in range(row, nrows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        for r in range(row + 1, nrows):
            for c in range(col + 1, ncols):
                m[r][c] = (m[r][c] * m[row][col] - m[r][col] * m[row][c]) // prev
            m[r][col] = 0
        prev = m[row][col]
        pivots.append((row, col))
        row += 1
    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    kernel = []
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in reversed(pivots):
            s = sum((Fraction(m[r][c]) * vec[c] for c in range(pc + 1, ncols)), Fraction(0))
            vec[pc] = -s / m[r][pc]
        kernel.append(tuple(vec))
    return len(pivots), kernel


def solve_normalized(matrix: RationalMatrix, pivot_index: int = 1, pivot_value=Fraction(-1)):
    """The unique kernel vector scaled to take pivot_value at pivot_index.

    Requires a one-dimensional kernel whose generator is nonzero at the
    pivot; otherwise no normalized solution exists and a SolveError says
    which precondition failed.
    """
    rank, kernel = rank_and_kernel(matrix)
    if len(kernel) != 1:
        raise SolveError(
            f"no unique normalized solution: kernel dimension is {len(kernel)}, not 1"
        )
    generator = kernel[0]
    component = generator[pivot_index - 1]
    if component == 0:
        raise SolveError(
            f"normalization impossible: kernel generator vanishes at c{pivot_index}"
        )
    scale = Fraction(pivot_value) / component
    return {k: generator[k - 1] * scale for k in range(1, matrix.ncols + 1)}


def residuals(eqs, assignment) -> dict[int, Fraction]:
    """Exact value of every equation's form at the assignment, by ordinal."""
    return {eq.ordinal: eq.form.evaluate(assignment) for eq in eqs}


@dataclass(frozen=True)
class VerificationReport:
    rank: int
    kernel_dimension: int
    paths_agree: bool
    solution: dict[int, Fraction]
    residuals: dict[int, Fraction]           # at the reference table, not the solve output
    table_match: dict[int, bool]
    theorem_magnitude_match: dict[int, bool]
    theorem_sign_flips: frozenset[int]
    printed_form_deviations: dict[int, Fraction]

    @property
    def passed(self) -> bool:
        return (
            self.rank == EXPECTED_RANK
            and self.kernel_dimension == 1
            and self.paths_agree
            and all(r == 0 for r in self.residuals.values())
            and all(self.table_match.values())
            and all(self.theorem_magnitude_match.values())
        )

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "rank": self.rank,
            "kernel_dimension": self.kernel_dimension,
            "paths_agree": self.paths_agree,
            "solution": {f"c{k}": fraction_str(v) for k, v in sorted(self.solution.items())},
            "residuals": {str(o): fraction_str(r) for o, r in sorted(self.residuals.items())},
            "table_match": {f"c{k}": v for k, v in sorted(self.table_match.items())},
            "theorem_magnitude_match": {
                f"c{k}": v for k, v in sorted(self.theorem_magnitude_match.items())
            },
            "theorem_sign_flips": sorted(self.theorem_sign_flips),
            "printed_form_deviations": {
                str(o): fraction_str(r) for o, r in sorted(self.printed_form_deviations.items())
            },
        }

    def to_text(self) -> str:
        zero_res = sum(1 for r in self.residuals.values() if r == 0)
        lines = [
            f"verification: {'PASS' if self.passed else 'FAIL'}",
            f"rank: {self.rank}   kernel dimension: {self.kernel_dimension}   "
            f"elimination paths agree: {'yes' if self.paths_agree else 'NO'}",
            f"residuals at reference table: {zero_res}/{len(self.residuals)} zero",
        ]
        nonzero = {o: r for o, r in self.residuals.items() if r != 0}
        if nonzero:
            lines += [f"  nonzero residual at equation {o}: {fraction_str(r)}"
                      for o, r in sorted(nonzero.items())]
        lines.append(
            f"solution matches reference table: "
            f"{sum(self.table_match.values())}/{len(self.table_match)}"
        )
        lines.append(
            f"displayed magnitudes match: "
            f"{sum(self.theorem_magnitude_match.values())}/{len(self.theorem_magnitude_match)}"
        )
        flips = " ".join(f"c{k}" for k in sorted(self.theorem_sign_flips))
        lines.append(f"sign flips against displayed coefficients: {flips}")
        if self.printed_form_deviations:
            lines.append("as-printed rows deviating from the reference table:")
            lines += [
                f"  equation {o}: printed form evaluates to {fraction_str(r)}"
                for o, r in sorted(self.printed_form_deviations.items())
            ]
        lines.append("solution (c1 = -1):")
        lines += [f"  c{k} = {fraction_str(v)}" for k, v in sorted(self.solution.items())]
        return "\n".join(lines)


def verify(data_dir=None) -> VerificationReport:
    """Full pipeline: load, assemble, dual-eliminate, solve, compare, report."""
    eqs = equations(data_dir)
    matrix = assemble_matrix(eqs)
    rank_g, kernel_g = rank_and_kernel(matrix)
    rank_b, kernel_b = bareiss_rank_and_kernel(matrix)
    paths_agree = rank_g == rank_b and kernel_g == kernel_b
    solution = solve_normalized(matrix)
    table = catalog.solution_table(data_dir)
    res = residuals(eqs, table)
    displayed = catalog.theorem_coeffs(data_dir)
    displayed[1] = Fraction(1)  # the left-hand side enters with coefficient 1
    magnitude_match = {k: abs(solution[k]) == displayed[k] for k in sorted(displayed)}
    sign_flips = frozenset(
        k for k, coeff in displayed.items()
        if k != 1 and coeff != 0 and solution.get(k) == -coeff
    )
    deviations = {
        eq.ordinal: eq.printed_form.evaluate(table)
        for eq in eqs
        if eq.printed_form is not None
    }
    return VerificationReport(
        rank=rank_g,
        kernel_dimension=matrix.ncols - rank_g,
        paths_agree=paths_agree,
        solution=solution,
        residuals=res,
        table_match={k: solution[k] == table[k] for k in sorted(table)},
        theorem_magnitude_match=magnitude_match,
        theorem_sign_flips=sign_flips,
        printed_form_deviations=deviations,
    )
