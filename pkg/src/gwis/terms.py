"""Decorated-bracket terms and their canonical forms.

A term is a product of correlator brackets.  Each bracket carries a genus
label and a multiset of insertions; an insertion is a label (the external
point ``x``, a half-edge ``i`` or ``j``, or a paired dummy index) together
with a non-negative psi-power.  Two terms are considered the same object
when one can be turned into the other by renaming dummies and reordering
insertions or brackets; ``canonicalize`` picks one representative per such
class by brute-force minimization over dummy numberings, which is exact and
cheap for the handful of dummy pairs that ever occur here.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import permutations

from .errors import InvalidTermError

SPECIAL_LABELS = ("x", "i", "j")

# rank of a special label in the total order x < i < j < d1 < d2 < ...
_SPECIAL_RANK = {"x": 0, "i": 1, "j": 2}
_DUMMY_RANK = 3


def is_dummy(label: str) -> bool:
    return label not in _SPECIAL_RANK


def dummy_name(index: int) -> str:
    """Canonical name of the index-th dummy (1-based): d1, d2, ..."""
    return f"d{index}"


@dataclass(frozen=True)
class Insertion:
    label: str
    psi: int = 0

    def __post_init__(self):
        if self.psi < 0:
            raise ValueError(f"psi power must be non-negative, got {self.psi}")
        ok = self.label.isalnum() and self.label[0].isalpha() and self.label.islower()
        if not ok:
            raise ValueError(f"bad insertion label {self.label!r}")


@dataclass(frozen=True)
class Correlator:
    insertions: tuple[Insertion, ...]
    genus: int = 0

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError(f"genus must be non-negative, got {self.genus}")
        object.__setattr__(self, "insertions", tuple(self.insertions))


@dataclass(frozen=True)
class Term:
    correlators: tuple[Correlator, ...]

    def __post_init__(self):
        object.__setattr__(self, "correlators", tuple(self.correlators))

    def labels(self):
        for corr in self.correlators:
            for ins in corr.insertions:
                yield ins.label

    def dummy_names(self) -> list[str]:
        return sorted({lab for lab in self.labels() if is_dummy(lab)})


def validate(term: Term) -> list[str]:
    """List of invariant violations; empty iff the term is well formed.

    Checks: at least one bracket, no empty bracket, each of x/i/j at most
    once, every dummy name exactly twice (self-pairing inside one bracket
    is allowed).
    """
    violations = []
    if not term.correlators:
        violations.append("term has no correlators")
    for corr in term.correlators:
        if not corr.insertions:
            violations.append("correlator has no insertions")
    counts = Counter(term.labels())
    for lab in SPECIAL_LABELS:
        if counts.get(lab, 0) > 1:
            violations.append(f"label {lab} occurs {counts[lab]} times")
    for lab in sorted(c for c in counts if is_dummy(c)):
        n = counts[lab]
        if n == 1:
            violations.append(f"dummy {lab} occurs once")
        elif n > 2:
            violations.append(f"dummy {lab} occurs {n} times")
    return violations


def _encode(term: Term, numbering: dict[str, int]):
    """Nested-tuple encoding of a term under a dummy-name numbering.

    Insertions sort by (label rank, psi); brackets by (genus, size,
    insertion sequence).  Encodings of terms related by reordering are
    identical, so comparing encodings across numberings is all that
    canonicalization needs.
    """
    corrs = []
    for corr in term.correlators:
        ins = sorted(
            ((_SPECIAL_RANK.get(i.label, _DUMMY_RANK), numbering.get(i.label, 0), i.psi)
             for i in corr.insertions)
        )
        corrs.append((corr.genus, len(ins), tuple(ins)))
    return tuple(sorted(corrs))


def _decode(encoding) -> Term:
    corrs = []
    for genus, _, ins in encoding:
        insertions = []
        for rank, number, psi in ins:
            label = SPECIAL_LABELS[rank] if rank < _DUMMY_RANK else dummy_name(number)
            insertions.append(Insertion(label, psi))
        corrs.append(Correlator(tuple(insertions), genus))
    return Term(tuple(corrs))


def canonicalize(term: Term) -> Term:
    """Canonical representative of the term's renaming/reordering class.

    Minimizes the encoding over all bijections of the term's dummy names
    onto d1 < d2 < ...; factorial in the number of dummy names, which never
    exceeds a handful in this domain.
    """
    violations = validate(term)
    if violations:
        raise InvalidTermError(violations)
    names = term.dummy_names()
    best = min(
        _encode(term, dict(zip(names, perm)))
        for perm in permutations(range(1, len(names) + 1))
    )
    return _decode(best)


def sort_key(term: Term):
    """Deterministic ordering key; on canonical terms it is the canonical encoding."""
    names = sorted(term.dummy_names(), key=lambda n: (len(n), n))
    return _encode(term, {n: k for k, n in enumerate(names, start=1)})


def equal(t1: Term, t2: Term) -> bool:
    """True iff the two terms agree up to dummy renaming and reordering."""
    return canonicalize(t1) == canonicalize(t2)


def swap_ij(term: Term) -> Term:
    """Exchange the half-edge labels i and j; result is canonical."""
    flip = {"i": "j", "j": "i"}
    swapped = Term(
        tuple(
            Correlator(
                tuple(Insertion(flip.get(i.label, i.label), i.psi) for i in c.insertions),
                c.genus,
            )
            for c in term.correlators
        )
    )
    return canonicalize(swapped)
