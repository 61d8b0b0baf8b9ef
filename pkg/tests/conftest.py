"""Shared helpers: independent brute-force generators and law samplers.

The generators here are deliberately separate from the library's own
enumeration code so tests can compare the two.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from excursionkit.core import Excursion


def iter_positive_jump_tuples(theta):
    """All positive-excursion jump tuples of length theta, by raw filtering.

    Enumerates every ±1 word and keeps the ones whose partial sums are
    strictly positive before returning to 0 at the end.  Exponential in
    theta; fine for theta <= 16.
    """
    half = theta // 2
    for ups in itertools.combinations(range(1, theta - 1), half - 1):
        jumps = [-1] * theta
        jumps[0] = 1
        for u in ups:
            jumps[u] = 1
        level = 0
        ok = True
        for n, y in enumerate(jumps):
            level += y
            if level == 0 and n != theta - 1:
                ok = False
                break
            if level < 0:
                ok = False
                break
        if ok and level == 0:
            yield tuple(jumps)


def positive_excursions_upto(theta_max):
    """List of Excursion objects for every even length 2..theta_max."""
    out = []
    for theta in range(2, theta_max + 1, 2):
        out.extend(Excursion(j) for j in iter_positive_jump_tuples(theta))
    return out


@pytest.fixture(scope="session")
def corpus_theta12():
    return positive_excursions_upto(12)


@pytest.fixture(scope="session")
def corpus_theta14():
    return positive_excursions_upto(14)


def random_rational(rng: random.Random) -> Fraction:
    den = rng.choice([3, 5, 7, 11, 13, 17, 19, 23])
    num = rng.randrange(1, den)
    return Fraction(num, den)


def random_rational_law(rng: random.Random, k: int | None = None):
    """A random exact-rational jump law with explicit table -k..k.

    Distinctness tests over levels up to h need k >= h, since beyond the
    table the constant tails make all level factors coincide.
    """
    from excursionkit.probability import JumpLaw

    if k is None:
        k = rng.randrange(0, 4)
    table = {j: random_rational(rng) for j in range(-k, k + 1)}
    return JumpLaw.from_table(
        table, p_plus=random_rational(rng), p_minus=random_rational(rng)
    )
