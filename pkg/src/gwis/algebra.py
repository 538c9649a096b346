"""Exact scalars and linear combinations of canonical terms.

A scalar is a rational constant plus a rational-linear form in the
unknowns c1..c30; all arithmetic is exact (fractions.Fraction), never
floats.  An expression maps canonical terms to nonzero scalars.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import MissingUnknownError
from .terms import Term, canonicalize, sort_key, swap_ij

N_UNKNOWNS = 30


class Scalar:
    """Rational-linear form  const + sum_k coeffs[k] * c_k  with exact entries."""

    __slots__ = ("const", "coeffs")

    def __init__(self, const=0, coeffs=None):
        object.__setattr__(self, "const", Fraction(const))
        clean = {}
        for k, q in (coeffs or {}).items():
            if not 1 <= k <= N_UNKNOWNS:
                raise ValueError(f"unknown index {k} outside 1..{N_UNKNOWNS}")
            q = Fraction(q)
            if q:
                clean[k] = q
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def unknown(cls, k: int, coeff=1) -> "Scalar":
        return cls(0, {k: coeff})

    @classmethod
    def zero(cls) -> "Scalar":
        return cls(0)

    @property
    def is_rational(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.const) or bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.const == other.const and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.const == other
        return NotImplemented

    def __hash__(self):
        return hash((self.const, tuple(sorted(self.coeffs.items()))))

    def __add__(self, other):
        other = _as_scalar(other)
        merged = dict(self.coeffs)
        for k, q in other.coeffs.items():
            merged[k] = merged.get(k, Fraction(0)) + q
        return Scalar(self.const + other.const, merged)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.const, {k: -q for k, q in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-_as_scalar(other))

    def __rsub__(self, other):
        return _as_scalar(other) + (-self)

    def __mul__(self, other):
        other = _as_scalar(other)
        if self.coeffs and other.coeffs:
            raise ValueError("product of two forms with unknowns is not linear")
        form, num = (self, other.const) if self.coeffs else (other, self.const)
        return Scalar(form.const * num, {k: q * num for k, q in form.coeffs.items()})

    __rmul__ = __mul__

    def evaluate(self, assignment) -> Fraction:
        """Exact value at an assignment k -> rational covering every unknown present."""
        total = self.const
        for k, q in self.coeffs.items():
            if k not in assignment:
                raise MissingUnknownError(k)
            total += q * Fraction(assignment[k])
        return total

    def __repr__(self):
        parts = [str(self.const)] if self.const or not self.coeffs else []
        parts += [f"{q}*c{k}" for k, q in sorted(self.coeffs.items())]
        return "Scalar(" + " + ".join(parts) + ")"


def _as_scalar(value) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(value)
    raise TypeError(f"cannot treat {type(value).__name__} as a scalar")


class Expression:
    """Finite linear combination of canonical terms with nonzero scalars."""

    __slots__ = ("_terms",)

    def __init__(self, items=()):
        acc: dict[Term, Scalar] = {}
        pairs = items.items() if isinstance(items, dict) else items
        for term, scalar in pairs:
            key = canonicalize(term)
            scalar = _as_scalar(scalar)
            acc[key] = acc.get(key, Scalar.zero()) + scalar
        object.__setattr__(self, "_terms", {t: s for t, s in acc.items() if s})

    def __setattr__(self, name, value):
        raise AttributeError("Expression is immutable")

    @classmethod
    def zero(cls) -> "Expression":
        return cls()

    @classmethod
    def _from_canonical(cls, mapping: dict[Term, Scalar]) -> "Expression":
        # internal fast path: keys already canonical, scalars nonzero
        expr = cls.__new__(cls)
        object.__setattr__(expr, "_terms", dict(mapping))
        return expr

    def items(self) -> list[tuple[Term, Scalar]]:
        """Term/scalar pairs in the deterministic canonical order."""
        return sorted(self._terms.items(), key=lambda kv: sort_key(kv[0]))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __contains__(self, term: Term):
        return canonicalize(term) in self._terms

    def __eq__(self, other):
        if not isinstance(other, Expression):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset((t, s) for t, s in self._terms.items()))

    def __add__(self, other):
        if not isinstance(other, Expression):
            return NotImplemented
        merged = dict(self._terms)
        for term, scalar in other._terms.items():
            merged[term] = merged.get(term, Scalar.zero()) + scalar
        return Expression._from_canonical({t: s for t, s in merged.items() if s})

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, factor) -> "Expression":
        factor = _as_scalar(factor)
        if not factor:
            return Expression.zero()
        return Expression._from_canonical(
            {t: factor * s for t, s in self._terms.items()}
        )

    def coefficient_of(self, term: Term) -> Scalar:
        return self._terms.get(canonicalize(term), Scalar.zero())

    def __repr__(self):
        return f"Expression({len(self._terms)} terms)"


def combine(a, e1: Expression, b, e2: Expression) -> Expression:
    """a*e1 + b*e2 with exact scalar arithmetic and zero terms dropped."""
    return e1.scaled(a) + e2.scaled(b)


def coefficient_of(expression: Expression, term: Term) -> Scalar:
    return expression.coefficient_of(term)


def evaluate(scalar: Scalar, assignment) -> Fraction:
    return scalar.evaluate(assignment)


def swap_ij_expression(expression: Expression) -> Expression:
    """Relabel i <-> j in every term of the expression."""
    return Expression((swap_ij(t), s) for t, s in expression.items())


def symmetrize_ij(expression: Expression) -> Expression:
    """Average of the expression with its i/j swap; idempotent by construction."""
    half = Fraction(1, 2)
    return combine(half, expression, half, swap_ij_expression(expression))
