"""Deterministic pretty-printers: plain text, LaTeX, JSON.

Plain output re-parses to the identical expression; equal expressions
print identically because terms are emitted in canonical order.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import Expression, Scalar
from .terms import Correlator, Insertion, Term

FORMATS = ("plain", "latex", "json")


def fraction_str(q: Fraction) -> str:
    """Lowest terms, positive denominator; integers without the /1."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# plain ----------------------------------------------------------------

def insertion_to_plain(ins: Insertion) -> str:
    return ins.label if ins.psi == 0 else f"{ins.label}^{ins.psi}"


def correlator_to_plain(corr: Correlator) -> str:
    body = "<" + " ".join(insertion_to_plain(i) for i in corr.insertions) + ">"
    return body if corr.genus == 0 else f"{body}_{corr.genus}"


def term_to_plain(term: Term) -> str:
    return " ".join(correlator_to_plain(c) for c in term.correlators)


def scalar_to_plain(scalar: Scalar) -> str:
    """Standalone rendering (used inside parentheses and in reports)."""
    parts = []
    if scalar.const or not scalar.coeffs:
        parts.append(fraction_str(scalar.const))
    for k, q in sorted(scalar.coeffs.items()):
        if q == 1:
            atom = f"c{k}"
        elif q == -1:
            atom = f"-c{k}"
        else:
            atom = f"{fraction_str(q)}*c{k}"
        if parts and not atom.startswith("-"):
            parts.append(f"+ {atom}")
        elif parts:
            parts.append(f"- {atom[1:]}")
        else:
            parts.append(atom)
    return " ".join(parts)


def _plain_piece(term: Term, scalar: Scalar):
    """(is_negative, body) for one summand, sign pulled out for rationals."""
    body = term_to_plain(term)
    if scalar.is_rational:
        mag = abs(scalar.const)
        if mag == 1:
            return scalar.const < 0, body
        return scalar.const < 0, f"{fraction_str(mag)} * {body}"
    if not scalar.const and len(scalar.coeffs) == 1:
        (k, q), = scalar.coeffs.items()
        if q == 1:
            return False, f"c{k} * {body}"
    return False, f"({scalar_to_plain(scalar)}) * {body}"


def to_plain(expression: Expression) -> str:
    items = expression.items()
    if not items:
        return "0"
    out = []
    for term, scalar in items:
        negative, body = _plain_piece(term, scalar)
        if not out:
            out.append(f"-1 * {body}" if negative and " * " not in body else
                       f"-{body}" if negative else body)
        else:
            out.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(out)


# latex ----------------------------------------------------------------

def _tex_sub(n: int) -> str:
    return f"_{n}" if 0 <= n <= 9 else f"_{{{n}}}"


def insertion_to_latex(ins: Insertion) -> str:
    label = ins.label if len(ins.label) == 1 else f"{{{ins.label}}}"
    out = f"\\partial^{label}"
    if ins.psi:
        out += _tex_sub(ins.psi)
    return out


def correlator_to_latex(corr: Correlator) -> str:
    body = "\\< " + " ".join(insertion_to_latex(i) for i in corr.insertions) + " \\>"
    return body if corr.genus == 0 else body + _tex_sub(corr.genus)


def term_to_latex(term: Term) -> str:
    return " ".join(correlator_to_latex(c) for c in term.correlators)


def _frac_latex(q: Fraction) -> str:
    sign = "-" if q < 0 else ""
    q = abs(q)
    if q.denominator == 1:
        return f"{sign}{q.numerator}"
    return f"{sign}\\frac{{{q.numerator}}}{{{q.denominator}}}"


def _unknown_latex(k: int) -> str:
    return f"c{_tex_sub(k)}"


def scalar_to_latex(scalar: Scalar) -> str:
    parts = []
    if scalar.const or not scalar.coeffs:
        parts.append(_frac_latex(scalar.const))
    for k, q in sorted(scalar.coeffs.items()):
        if q == 1:
            atom = _unknown_latex(k)
        elif q == -1:
            atom = "-" + _unknown_latex(k)
        else:
            atom = _frac_latex(q) + " " + _unknown_latex(k)
        if parts and not atom.startswith("-"):
            parts.append("+ " + atom)
        elif parts:
            parts.append("- " + atom[1:])
        else:
            parts.append(atom)
    return " ".join(parts)


def to_latex(expression: Expression) -> str:
    items = expression.items()
    if not items:
        return "0"
    out = []
    for term, scalar in items:
        body = term_to_latex(term)
        if scalar.is_rational:
            negative, mag = scalar.const < 0, abs(scalar.const)
            piece = body if mag == 1 else f"{_frac_latex(mag)} {body}"
            if not out:
                out.append(("-" if negative else "") + piece)
            else:
                out.append(("- " if negative else "+ ") + piece)
        else:
            piece = f"\\left( {scalar_to_latex(scalar)} \\right) {body}"
            out.append(piece if not out else "+ " + piece)
    return " ".join(out)


# json -----------------------------------------------------------------

def scalar_payload(scalar: Scalar) -> dict:
    return {
        "const": fraction_str(scalar.const),
        "unknowns": {str(k): fraction_str(q) for k, q in sorted(scalar.coeffs.items())},
    }


def term_payload(term: Term) -> list:
    return [
        {
            "genus": corr.genus,
            "insertions": [{"label": i.label, "psi": i.psi} for i in corr.insertions],
        }
        for corr in term.correlators
    ]


def json_payload(expression: Expression) -> dict:
    return {
        "terms": [
            {"scalar": scalar_payload(s), "correlators": term_payload(t)}
            for t, s in expression.items()
        ]
    }


def to_json(expression: Expression) -> str:
    return json.dumps(json_payload(expression), indent=2)


# dispatch ---------------------------------------------------------------

def render(expression: Expression, fmt: str = "plain") -> str:
    """Render an expression in one of the supported formats."""
    if fmt == "plain":
        return to_plain(expression)
    if fmt == "latex":
        return to_latex(expression)
    if fmt == "json":
        return to_json(expression)
    raise ValueError(f"unsupported format {fmt!r}")
