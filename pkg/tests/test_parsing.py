from fractions import Fraction as F

import pytest
from hypothesis import example, given, settings
from hypothesis import strategies as st

from genutil import random_expression, seeded
from gwis import (
    Correlator,
    Expression,
    GwisError,
    Insertion,
    InvalidTermError,
    ParseError,
    Scalar,
    Term,
    parse_expression,
    parse_term,
    to_plain,
)
from gwis.printing import render, to_json, to_latex


def test_parse_single_bracket_with_psi_and_genus():
    e = parse_expression("<x^3>_3")
    term = Term((Correlator((Insertion("x", 3),), 3),))
    assert e == Expression([(term, 1)])


def test_defaults_genus_zero_psi_zero_coefficient_one():
    e = parse_expression("<x mu mu>")
    ((term, scalar),) = e.items()
    assert scalar == Scalar(1)
    assert term.correlators[0].genus == 0
    assert all(i.psi == 0 for i in term.correlators[0].insertions)


def test_commas_are_ignored():
    assert parse_expression("<x, mu, mu>") == parse_expression("<x mu mu>")


def test_multi_term_sum_matches_manual_construction():
    e = parse_expression("5/72 * <x mu nu> <a mu nu> <a>_2 - 1/252 * <mu a a> <x^1 mu>_2")
    manual = Expression([
        (parse_term("<x mu nu> <a mu nu> <a>_2"), F(5, 72)),
        (parse_term("<mu a a> <x^1 mu>_2"), F(-1, 252)),
    ])
    assert e == manual


def test_unknown_scalars_parse():
    e = parse_expression("c2*<x a b><mu a b><mu>_2 + c4*<x mu mu nu><nu^1>_2")
    assert len(e) == 2
    assert e.coefficient_of(parse_term("<x mu mu nu> <nu^1>_2")) == Scalar.unknown(4)


def test_linform_scalars_parse():
    e = parse_expression("(1/2 - 3*c2 + c4) * <x>_2")
    assert e.coefficient_of(parse_term("<x>_2")) == Scalar(F(1, 2), {2: -3, 4: 1})


def test_zero_literal_is_the_empty_expression():
    assert parse_expression("0") == Expression.zero()
    assert parse_expression("0 * <x mu mu>") == Expression.zero()
    assert parse_expression("<x> - <x>") == Expression.zero()
    assert to_plain(Expression.zero()) == "0"
    assert parse_expression(to_plain(Expression.zero())) == Expression.zero()


def test_syntax_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse_expression("<x mu mu> ?")
    assert err.value.position == 10
    with pytest.raises(ParseError):
        parse_expression("<x mu mu")           # unterminated bracket
    with pytest.raises(ParseError):
        parse_expression("<>")                 # empty bracket
    with pytest.raises(ParseError):
        parse_expression("5 <x>")              # missing '*'
    with pytest.raises(ParseError):
        parse_expression("1/0 * <x>")          # zero denominator
    with pytest.raises(ParseError):
        parse_expression("c31 * <x>")          # unknown out of range


def test_semantic_errors_report_violations():
    with pytest.raises(InvalidTermError) as err:
        parse_expression("<x mu nu> <mu>_1")
    assert "dummy nu occurs once" in err.value.violations


def test_printing_is_deterministic_for_equal_expressions():
    a = parse_expression("<x u u> + 1/3 * <x^2>_1")
    b = parse_expression("1/3 * <x^2>_1 + <x w w>")
    assert a == b
    assert to_plain(a) == to_plain(b)
    assert to_latex(a) == to_latex(b)
    assert to_json(a) == to_json(b)


def test_render_rejects_unknown_format():
    with pytest.raises(ValueError):
        render(Expression.zero(), "html")


def test_negative_and_unit_coefficients_round_trip():
    for text in ("-1 * <x>", "-5/72 * <x>", "<x> - <x^1>", "(-c2) * <x>", "(2*c2 - 1/3) * <x>"):
        e = parse_expression(text)
        assert parse_expression(to_plain(e)) == e


@settings(max_examples=300)
@given(seeded(random_expression))
def test_plain_round_trip(expression):
    assert parse_expression(to_plain(expression)) == expression


@settings(max_examples=500)
@example("<x\x00>")
@example("напиши")
@example("<" * 50)
@example("0" * 40)
@given(st.text(max_size=80))
def test_fuzz_parser_total(text):
    try:
        parse_expression(text)
    except GwisError:
        pass  # ParseError / InvalidTermError are the only sanctioned failures
