"""Deterministic random generators shared by the unit and acceptance suites.

The envelope matches the embedded corpus: at most 4 correlators, 7
insertions, 3 dummy pairs, psi-powers up to 3.
"""

import random
from fractions import Fraction

from hypothesis import strategies as st

from gwis import Correlator, Expression, Insertion, Scalar, Term

DUMMY_POOL = ("u", "v", "w")
PSI_CHOICES = (0, 0, 0, 1, 2, 3)
GENUS_CHOICES = (0, 0, 1, 2, 3)


def random_term(rng: random.Random) -> Term:
    while True:
        npairs = rng.randint(0, 3)
        labels = [name for name in DUMMY_POOL[:npairs] for _ in range(2)]
        for special in "xij":
            if rng.random() < (0.9 if special == "x" else 0.35):
                labels.append(special)
        if not labels or len(labels) > 7:
            continue
        rng.shuffle(labels)
        ncorr = rng.randint(1, min(4, len(labels)))
        cuts = sorted(rng.sample(range(1, len(labels)), ncorr - 1))
        groups = [labels[i:j] for i, j in zip([0] + cuts, cuts + [len(labels)])]
        return Term(tuple(
            Correlator(
                tuple(Insertion(lab, rng.choice(PSI_CHOICES)) for lab in group),
                rng.choice(GENUS_CHOICES),
            )
            for group in groups
        ))


def random_rational(rng: random.Random, nonzero=False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-60, 60), rng.randint(1, 60))
        if q or not nonzero:
            return q


def random_scalar(rng: random.Random) -> Scalar:
    if rng.random() < 0.6:
        return Scalar(random_rational(rng, nonzero=True))
    coeffs = {
        k: random_rational(rng, nonzero=True)
        for k in rng.sample(range(1, 31), rng.randint(1, 3))
    }
    const = random_rational(rng) if rng.random() < 0.3 else 0
    return Scalar(const, coeffs)


def random_expression(rng: random.Random) -> Expression:
    return Expression(
        (random_term(rng), random_scalar(rng)) for _ in range(rng.randint(0, 4))
    )


def seeded(maker):
    """Hypothesis strategy drawing a seed and running one of the generators."""
    return st.builds(lambda seed: maker(random.Random(seed)), st.integers(0, 2**48))
