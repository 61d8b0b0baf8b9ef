"""Excursion validation, individuals, level numbers, index sequences."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from excursionkit.core import (
    Excursion,
    Individual,
    LevelNumbers,
    from_index_sequence,
    from_jumps,
    from_values,
    index_sequence,
    individuals,
    level_numbers,
)
from excursionkit.errors import MalformedSequence, NotAnExcursion

from conftest import positive_excursions_upto


def oracle_individuals(x: Excursion):
    """Independent individual extraction: test every (b, t) pair directly.

    A pair qualifies when the path sits at the same level at both ends,
    leaves in the excursion's direction at b, and stays strictly beyond
    that level in between, with t minimal.
    """
    vals = x.values
    sgn = x.sign
    found = []
    for b in range(x.theta):
        if x.jumps[b] != sgn:
            continue
        h = vals[b]
        t = None
        for n in range(b + 1, x.theta + 1):
            if vals[n] == h:
                t = n
                break
        assert t is not None
        assert x.jumps[t - 1] == -sgn
        assert all(sgn * vals[n] > sgn * h for n in range(b + 1, t))
        found.append((b, h, t))
    found.sort(key=lambda rec: (abs(rec[1]), rec[0]))
    return found


class TestFromJumps:
    def test_smallest_excursion(self):
        x = from_jumps([1, -1])
        assert x.values == (0, 1, 0)
        assert x.theta == 2
        assert x.height == 1
        assert x.is_positive

    def test_hand_traced_theta4(self):
        x = from_jumps([1, 1, -1, -1])
        assert x.values == (0, 1, 2, 1, 0)
        assert x.theta == 4
        assert x.height == 2

    def test_interior_zero_rejected(self):
        with pytest.raises(NotAnExcursion) as err:
            from_jumps([1, -1, 1, -1])
        assert err.value.reason == "interior-zero"

    def test_nonzero_endpoint_rejected(self):
        with pytest.raises(NotAnExcursion) as err:
            from_jumps([1, 1, -1])
        assert err.value.reason == "nonzero-endpoint"

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            from_jumps([])

    def test_bad_step_rejected(self):
        with pytest.raises(ValueError):
            from_jumps([1, 0, -1])

    def test_negative_excursion(self):
        x = from_jumps([-1, -1, 1, 1])
        assert x.values == (0, -1, -2, -1, 0)
        assert x.height == -2
        assert not x.is_positive

    def test_from_values_round_trip(self):
        x = from_values([0, 1, 2, 1, 2, 1, 0])
        assert x.jumps == (1, 1, -1, 1, -1, -1)

    def test_json_round_trip(self):
        x = from_jumps([1, 1, -1, -1])
        assert Excursion.from_dict(x.to_dict()) == x

    def test_value_string(self):
        assert str(from_jumps([1, 1, -1, -1])) == "0 1 2 1 0"

    def test_jump_balance_exhaustive(self, corpus_theta12):
        for x in corpus_theta12:
            assert sum(x.jumps) == 0
            assert x.jumps.count(1) == x.jumps.count(-1) == x.theta // 2


class TestIndividuals:
    def test_single_individual(self):
        x = from_values([0, 1, 0])
        assert individuals(x) == [Individual(birth=0, level=0, death=2, rank=0)]

    def test_two_siblings(self):
        x = from_values([0, 1, 2, 1, 2, 1, 0])
        got = [(i.birth, i.level, i.death) for i in individuals(x)]
        assert got == [(0, 0, 6), (1, 1, 3), (3, 1, 5)]

    def test_four_individuals(self):
        x = from_values([0, 1, 2, 3, 2, 1, 2, 1, 0])
        inds = individuals(x)
        assert [i.level for i in inds] == [0, 1, 1, 2]
        assert inds[3].birth == 2
        assert [i.rank for i in inds] == [0, 1, 2, 3]

    def test_against_pair_scan_oracle(self, corpus_theta12):
        for x in corpus_theta12:
            got = [(i.birth, i.level, i.death) for i in individuals(x)]
            assert got == oracle_individuals(x)

    def test_negative_excursions_mirror(self, corpus_theta12):
        from excursionkit.transforms import negate

        for x in corpus_theta12:
            if x.theta > 10:
                continue
            neg = negate(x)
            got = [(i.birth, i.level, i.death) for i in individuals(neg)]
            assert got == oracle_individuals(neg)
            mirrored = [(i.birth, -i.level, i.death) for i in individuals(x)]
            assert got == mirrored

    def test_birth_death_bijection(self, corpus_theta12):
        # one individual per +1 jump; births and (death-1) positions tile [0, theta)
        for x in corpus_theta12:
            inds = individuals(x)
            assert len(inds) == x.theta // 2
            marks = sorted([i.birth for i in inds] + [i.death - 1 for i in inds])
            assert marks == list(range(x.theta))


class TestLevelNumbers:
    def test_examples(self):
        assert level_numbers(from_values([0, 1, 0])).counts == (1,)
        assert level_numbers(from_values([0, 1, 2, 1, 2, 1, 0])).counts == (1, 2)
        assert level_numbers(from_values([0, 1, 2, 3, 2, 1, 2, 1, 0])).counts == (1, 2, 1)

    def test_total_is_half_theta(self, corpus_theta14):
        for x in corpus_theta14:
            n = level_numbers(x)
            assert n.total == x.theta // 2
            assert n.height == abs(x.height)

    def test_validation(self):
        with pytest.raises(ValueError):
            LevelNumbers.of(2, 1)
        with pytest.raises(ValueError):
            LevelNumbers.of(1, 0, 2)
        with pytest.raises(ValueError):
            LevelNumbers(())
        assert LevelNumbers.of(1, 2, 0, 0).counts == (1, 2)

    def test_indexing_past_height_is_zero(self):
        n = LevelNumbers.of(1, 2)
        assert n[0] == 1 and n[1] == 2 and n[5] == 0


class TestIndexSequence:
    def test_examples(self):
        assert index_sequence(from_values([0, 1, 0])) == (0, 0)
        assert index_sequence(from_values([0, 1, 2, 1, 2, 1, 0])) == (0, 1, 1, 2, 2, 0)

    def test_inverse_example(self):
        x = from_index_sequence([0, 1, 1, 2, 2, 0])
        assert x.values == (0, 1, 2, 1, 2, 1, 0)

    def test_round_trip_exhaustive(self, corpus_theta14):
        for x in corpus_theta14:
            assert from_index_sequence(index_sequence(x)) == x

    def test_round_trip_negative(self, corpus_theta12):
        from excursionkit.transforms import negate

        for x in corpus_theta12:
            if x.theta > 8:
                continue
            neg = negate(x)
            seq = index_sequence(neg)
            assert seq == index_sequence(x)
            assert from_index_sequence(seq, sign=-1) == neg

    def test_non_twice_rejected(self):
        with pytest.raises(MalformedSequence):
            from_index_sequence([0, 1, 1, 0, 0, 2])

    def test_crossing_rejected(self):
        with pytest.raises(MalformedSequence):
            from_index_sequence([0, 1, 0, 1])

    def test_early_root_closure_rejected(self):
        with pytest.raises(MalformedSequence):
            from_index_sequence([0, 0, 1, 1])

    def test_noncanonical_labels_accepted(self):
        # well-nested but not level-ordered labels decode fine
        x = from_index_sequence([5, 9, 9, 2, 2, 5])
        assert x.values == (0, 1, 2, 1, 2, 1, 0)


@given(st.lists(st.sampled_from([1, -1]), min_size=1, max_size=40))
def test_validator_accepts_exactly_the_excursions(jumps):
    level = 0
    ok = True
    for n, y in enumerate(jumps):
        level += y
        if level == 0 and n != len(jumps) - 1:
            ok = False
            break
    ok = ok and level == 0
    if ok:
        x = from_jumps(jumps)
        assert x.theta == len(jumps)
    else:
        with pytest.raises((NotAnExcursion, ValueError)):
            from_jumps(jumps)


@given(st.integers(2, 14).filter(lambda t: t % 2 == 0), st.randoms())
def test_individual_count_random(theta, rnd):
    xs = positive_excursions_upto(theta)
    x = rnd.choice(xs)
    assert len(individuals(x)) == x.theta // 2
