"""Parser for the plain-text expression grammar.

    expression := term { ("+"|"-") term }
    term       := [ scalar "*" ] factor { factor }
    scalar     := rational | unknown | "(" linform ")"
    linform    := [ "-" ] atom { ("+"|"-") atom }
    atom       := rational | [ rational "*" ] unknown
    rational   := [ "-" ] integer [ "/" integer ]
    unknown    := "c" integer            (c1 .. c30)
    factor     := "<" insertion { insertion } ">" [ "_" integer ]
    insertion  := label [ "^" integer ]
    label      := "x" | "i" | "j" | dummy-identifier

Whitespace separates insertions; commas are ignored.  The single token
``0`` (a rational zero without a following ``*``) denotes the empty
expression, so that printing round-trips the canonical zero.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import N_UNKNOWNS, Expression, Scalar
from .errors import InvalidTermError, ParseError
from .terms import Correlator, Insertion, Term, canonicalize

_TOKEN_RE = re.compile(r"[ \t\r\n,]+|(?P<int>\d+)|(?P<ident>[a-z][a-z0-9]*)|(?P<punct>[<>^_*+\-/()])")
_UNKNOWN_RE = re.compile(r"c([0-9]+)$")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup == "int":
            tokens.append(("int", m.group(), pos))
        elif m.lastgroup == "ident":
            tokens.append(("ident", m.group(), pos))
        elif m.lastgroup == "punct":
            tokens.append((m.group(), m.group(), pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.at = 0

    def peek(self):
        return self.tokens[self.at]

    def advance(self):
        tok = self.tokens[self.at]
        self.at += 1
        return tok

    def expect(self, kind, what=None):
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(f"unexpected {tok[1]!r}" if tok[0] != "eof" else "unexpected end of input",
                             tok[2], (what or kind,))
        return self.advance()

    # grammar rules -------------------------------------------------

    def expression(self) -> Expression:
        pairs = []
        self._term(pairs, Fraction(1))
        while self.peek()[0] in ("+", "-"):
            sign = Fraction(1) if self.advance()[0] == "+" else Fraction(-1)
            self._term(pairs, sign)
        self.expect("eof", "'+', '-' or end of input")
        return Expression(pairs)

    def _term(self, pairs, sign):
        scalar = None
        start = self.peek()
        if start[0] in ("int", "ident", "(", "-"):
            scalar = self._scalar()
            if self.peek()[0] == "*":
                self.advance()
            elif scalar == 0:
                return  # bare zero: contributes nothing
            else:
                raise ParseError("scalar without factor", self.peek()[2], ("'*'",))
        term = self._factors()
        pairs.append((term, (Scalar(1) if scalar is None else scalar) * sign))

    def _factors(self) -> Term:
        start = self.peek()
        correlators = [self._factor()]
        while self.peek()[0] == "<":
            correlators.append(self._factor())
        raw = Term(tuple(correlators))
        try:
            return canonicalize(raw)
        except InvalidTermError as err:
            raise InvalidTermError(err.violations, position=start[2]) from None

    def _factor(self) -> Correlator:
        self.expect("<", "'<'")
        insertions = [self._insertion()]
        while self.peek()[0] == "ident":
            insertions.append(self._insertion())
        self.expect(">", "'>' or an insertion label")
        genus = 0
        if self.peek()[0] == "_":
            self.advance()
            genus = int(self.expect("int", "genus integer")[1])
        return Correlator(tuple(insertions), genus)

    def _insertion(self) -> Insertion:
        label = self.expect("ident", "insertion label")[1]
        psi = 0
        if self.peek()[0] == "^":
            self.advance()
            psi = int(self.expect("int", "psi-power integer")[1])
        return Insertion(label, psi)

    def _scalar(self) -> Scalar:
        tok = self.peek()
        if tok[0] == "(":
            self.advance()
            value = self._linform()
            self.expect(")", "')'")
            return value
        if tok[0] == "ident":
            return self._unknown()
        return Scalar(self._rational())

    def _linform(self) -> Scalar:
        sign = Fraction(1)
        if self.peek()[0] == "-":
            self.advance()
            sign = Fraction(-1)
        value = self._atom() * sign
        while self.peek()[0] in ("+", "-"):
            sign = Fraction(1) if self.advance()[0] == "+" else Fraction(-1)
            value = value + self._atom() * sign
        return value

    def _atom(self) -> Scalar:
        if self.peek()[0] == "ident":
            return self._unknown()
        coeff = self._rational()
        if self.peek()[0] == "*":
            self.advance()
            return self._unknown(coeff)
        return Scalar(coeff)

    def _unknown(self, coeff=Fraction(1)) -> Scalar:
        tok = self.expect("ident", "unknown c<k>")
        m = _UNKNOWN_RE.match(tok[1])
        if not m:
            raise ParseError(f"{tok[1]!r} is not an unknown", tok[2], ("c<k>",))
        k = int(m.group(1))
        if not 1 <= k <= N_UNKNOWNS:
            raise ParseError(f"unknown index {k} outside 1..{N_UNKNOWNS}", tok[2])
        return Scalar.unknown(k, coeff)

    def _rational(self) -> Fraction:
        sign = 1
        if self.peek()[0] == "-":
            self.advance()
            sign = -1
        num = int(self.expect("int", "integer")[1])
        if self.peek()[0] == "/":
            slash = self.advance()
            den = int(self.expect("int", "denominator integer")[1])
            if den == 0:
                raise ParseError("zero denominator", slash[2])
            return Fraction(sign * num, den)
        return Fraction(sign * num)


def parse_expression(text: str) -> Expression:
    """Parse source text into an expression with canonical term keys."""
    return _Parser(_tokenize(text)).expression()


def parse_term(text: str) -> Term:
    """Parse a bare product of brackets (no scalar) into one canonical term."""
    parser = _Parser(_tokenize(text))
    term = parser._factors()
    parser.expect("eof", "end of input")
    return term
