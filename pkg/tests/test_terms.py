import random

import pytest
from hypothesis import given

from genutil import random_term, seeded
from gwis import (
    Correlator,
    Insertion,
    InvalidTermError,
    Term,
    canonicalize,
    equal,
    parse_term,
    swap_ij,
    validate,
)


def bracket(labels, genus=0, psis=None):
    psis = psis or [0] * len(labels)
    return Correlator(tuple(Insertion(l, p) for l, p in zip(labels, psis)), genus)


def test_validate_accepts_self_contraction():
    term = Term((bracket(["x", "mu", "mu"]),))
    assert validate(term) == []


def test_validate_reports_free_dummies():
    term = Term((bracket(["x", "mu", "nu"]),))
    assert validate(term) == ["dummy mu occurs once", "dummy nu occurs once"]


def test_validate_reports_overpaired_dummy():
    term = Term((bracket(["x", "mu"]), bracket(["mu", "mu", "nu"]), bracket(["nu"], genus=1)))
    assert validate(term) == ["dummy mu occurs 3 times"]


def test_validate_reports_duplicate_specials_and_structure():
    assert validate(Term(())) == ["term has no correlators"]
    assert "correlator has no insertions" in validate(Term((bracket([]),)))
    term = Term((bracket(["x"]), bracket(["x"])))
    assert validate(term) == ["label x occurs 2 times"]


def test_insertion_and_correlator_guards():
    with pytest.raises(ValueError):
        Insertion("x", -1)
    with pytest.raises(ValueError):
        Insertion("X")
    with pytest.raises(ValueError):
        Correlator((Insertion("x"),), genus=-2)


def test_canonicalize_rejects_invalid_terms():
    with pytest.raises(InvalidTermError) as err:
        canonicalize(Term((bracket(["x", "mu", "nu"]),)))
    assert err.value.violations == ["dummy mu occurs once", "dummy nu occurs once"]


def test_canonicalize_identifies_renamed_reordered_terms():
    t1 = parse_term("<x a b> <j a b> <i^1>_2")
    t2 = parse_term("<j mu nu> <x nu mu> <i^1>_2")
    assert canonicalize(t1) == canonicalize(t2)
    assert canonicalize(t1) == parse_term("<x d1 d2> <j d1 d2> <i^1>_2")


def test_canonical_dummies_are_numbered():
    t = canonicalize(Term((bracket(["zz", "zz", "x"]),)))
    assert sorted(t.dummy_names()) == ["d1"]


def test_equal_spec_examples():
    # genus subscript sitting on different factors makes different strata
    assert not equal(parse_term("<x mu nu nu> <mu a a>_1"),
                     parse_term("<x mu nu nu>_1 <mu a a>"))
    # psi-power differences matter
    assert not equal(parse_term("<x^3>_3"), parse_term("<x>_3"))
    # dummy renaming does not
    assert equal(parse_term("<x mu nu> <mu nu a a>_1"),
                 parse_term("<x nu mu> <nu mu b b>_1"))


def test_swap_ij_examples():
    before = parse_term("<x i mu> <j b b> <mu^1>_2")
    after = parse_term("<x j mu> <i b b> <mu^1>_2")
    assert swap_ij(before) == canonicalize(after)
    plain = parse_term("<x mu mu>")
    assert swap_ij(plain) == canonicalize(plain)


@given(seeded(random_term))
def test_canonicalize_idempotent(term):
    canon = canonicalize(term)
    assert canonicalize(canon) == canon


@given(seeded(random_term))
def test_renaming_invariance(term):
    rng = random.Random(hash(term) & 0xFFFF)
    names = term.dummy_names()
    renamed_to = rng.sample(["p", "q", "r", "s"], len(names))
    mapping = dict(zip(names, renamed_to))
    renamed = Term(tuple(
        Correlator(tuple(Insertion(mapping.get(i.label, i.label), i.psi) for i in c.insertions), c.genus)
        for c in term.correlators
    ))
    assert equal(term, renamed)


@given(seeded(random_term))
def test_permutation_invariance(term):
    rng = random.Random(hash(term) & 0xFFFF)
    shuffled_corrs = []
    for corr in term.correlators:
        ins = list(corr.insertions)
        rng.shuffle(ins)
        shuffled_corrs.append(Correlator(tuple(ins), corr.genus))
    rng.shuffle(shuffled_corrs)
    assert equal(term, Term(tuple(shuffled_corrs)))


@given(seeded(random_term))
def test_swap_ij_is_an_involution(term):
    assert swap_ij(swap_ij(term)) == canonicalize(term)
