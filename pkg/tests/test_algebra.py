import random
from fractions import Fraction as F

import pytest
from hypothesis import given

from genutil import random_expression, random_scalar, random_term, seeded
from gwis import (
    Expression,
    MissingUnknownError,
    Scalar,
    coefficient_of,
    combine,
    evaluate,
    parse_expression,
    parse_term,
    solution_table,
    swap_ij_expression,
    symmetrize_ij,
)


def test_scalar_drops_zero_coefficients():
    s = Scalar(0, {2: 0, 4: F(1, 3)})
    assert s.coeffs == {4: F(1, 3)}
    assert not Scalar(0, {7: 0})


def test_scalar_rejects_out_of_range_unknowns():
    with pytest.raises(ValueError):
        Scalar(0, {31: 1})
    with pytest.raises(ValueError):
        Scalar.unknown(0)


def test_scalar_arithmetic_is_exact():
    s = Scalar(F(1, 3), {2: F(1, 7)}) + Scalar(F(2, 3), {2: F(6, 7), 4: 1})
    assert s == Scalar(1, {2: 1, 4: 1})
    assert Scalar.unknown(2) - Scalar.unknown(2) == Scalar.zero()
    assert Scalar.unknown(3, F(1, 2)) * 4 == Scalar.unknown(3, 2)


def test_product_of_two_forms_is_rejected():
    with pytest.raises(ValueError):
        Scalar.unknown(1) * Scalar.unknown(2)


def test_evaluate_constraint_rows_at_the_reference_table():
    table = solution_table()
    row1 = Scalar(0, {2: 1, 4: 1})
    assert evaluate(row1, table) == F(-5, 72) + F(5, 72) == 0
    row2 = Scalar(0, {2: 0, 3: 3, 4: -1, 6: F(1, 24)})
    assert evaluate(row2, table) == F(-6, 504) + F(-35, 504) + F(41, 504) == 0


def test_evaluate_pure_rational_ignores_assignment():
    assert evaluate(Scalar(F(3, 4)), {}) == F(3, 4)


def test_evaluate_names_the_missing_unknown():
    with pytest.raises(MissingUnknownError) as err:
        evaluate(Scalar.unknown(13), {12: 1})
    assert err.value.index == 13
    assert "c13" in str(err.value)


def test_combine_cancellation_gives_empty_expression():
    e = parse_expression("<x mu mu> + 2 * <x^2>_1")
    assert combine(1, e, -1, e) == Expression.zero()
    assert not combine(1, e, -1, e)


def test_combine_builds_unknown_coefficient_sums():
    e = combine(
        Scalar.unknown(2), parse_expression("<x a b> <mu a b> <mu>_2"),
        Scalar.unknown(4), parse_expression("<x mu mu nu> <nu^1>_2"),
    )
    assert len(e) == 2
    assert e.coefficient_of(parse_term("<x a b> <mu a b> <mu>_2")) == Scalar.unknown(2)
    assert e == parse_expression("c2*<x a b><mu a b><mu>_2 + c4*<x mu mu nu><nu^1>_2")


def test_coefficient_of_empty_expression_is_zero():
    assert coefficient_of(Expression.zero(), parse_term("<x>_1")) == Scalar.zero()


@given(seeded(random_expression))
def test_coefficient_of_is_linear(e1):
    rng = random.Random(len(e1) + 17)
    e2 = random_expression(rng)
    a, b = random_scalar(rng), random_scalar(rng)
    if not (a.is_rational or b.is_rational):
        b = Scalar(F(1, 2))
    probe = random_term(rng)
    combined = None
    try:
        combined = combine(a, e1, b, e2)
    except ValueError:
        return  # nonlinear scalar product; nothing to check
    expected = a * coefficient_of(e1, probe) + b * coefficient_of(e2, probe)
    assert coefficient_of(combined, probe) == expected


def test_symmetrize_fixes_symmetric_expressions():
    e = parse_expression("<x a b> <b i j> <a^1>_2")
    assert symmetrize_ij(e) == e


def test_symmetrize_halves_asymmetric_terms():
    e = parse_expression("<x i mu> <j b b> <mu^1>_2")
    sym = symmetrize_ij(e)
    assert sym == parse_expression(
        "1/2 * <x i mu> <j b b> <mu^1>_2 + 1/2 * <x j mu> <i b b> <mu^1>_2"
    )


@given(seeded(random_expression))
def test_symmetrize_is_idempotent_and_swap_fixed(e):
    sym = symmetrize_ij(e)
    assert symmetrize_ij(sym) == sym
    assert swap_ij_expression(sym) == sym
