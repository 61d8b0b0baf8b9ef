"""Unique-maximum rotation, its level-number reversal, the 8-element group."""

from __future__ import annotations

import itertools

import pytest

from excursionkit.core import from_values, level_numbers
from excursionkit.transforms import negate, reverse
from excursionkit.vervaat import (
    NOT_AN_EXCURSION,
    SAME_EXCURSION,
    VALID_NEGATIVE_EXCURSION,
    NotUniqueMax,
    group_elements,
    group_table,
    in_domain,
    rotation_uniqueness_check,
    vervaat,
)

from conftest import positive_excursions_upto


def unique_max_corpus(theta_max):
    both = []
    for x in positive_excursions_upto(theta_max):
        if in_domain(x) is not None:
            both.append(x)
            both.append(negate(x))
    return both


class TestInDomain:
    def test_single_peak(self):
        w = in_domain(from_values([0, 1, 2, 1, 0]))
        assert w is not None and w.argmax == 2

    def test_two_peaks(self):
        assert in_domain(from_values([0, 1, 2, 1, 2, 1, 0])) is None

    def test_taller_single_peak(self):
        x = from_values([0, 1, 2, 3, 2, 1, 2, 1, 0])
        w = in_domain(x)
        assert w is not None and w.argmax == 3
        assert level_numbers(x).counts[-1] == 1

    def test_characterisations_agree_exhaustive(self, corpus_theta12):
        for x in corpus_theta12:
            w = in_domain(x)
            peaks = x.values.count(x.height)
            assert (w is not None) == (peaks == 1)

    def test_negative_side_mirrors(self, corpus_theta12):
        for x in corpus_theta12:
            w_pos = in_domain(x)
            w_neg = in_domain(negate(x))
            assert (w_pos is None) == (w_neg is None)
            if w_pos is not None:
                assert w_neg.argmax == w_pos.argmax


class TestVervaat:
    def test_example(self):
        assert vervaat(from_values([0, 1, 2, 1, 0])).values == (0, -1, -2, -1, 0)

    def test_rejects_tied_max(self):
        with pytest.raises(NotUniqueMax):
            vervaat(from_values([0, 1, 2, 1, 2, 1, 0]))

    def test_sign_theta_height(self, corpus_theta12):
        for x in corpus_theta12:
            if in_domain(x) is None:
                continue
            image = vervaat(x)
            assert image.theta == x.theta
            assert image.height == -x.height
            assert image.sign == -x.sign

    def test_level_numbers_reverse_exhaustive(self):
        for x in unique_max_corpus(12):
            image = vervaat(x)
            assert level_numbers(image).counts == tuple(
                reversed(level_numbers(x).counts)
            )

    def test_involution_exhaustive(self):
        for x in unique_max_corpus(12):
            assert vervaat(vervaat(x)) == x

    def test_image_unique_min_coordinate(self):
        for x in unique_max_corpus(12):
            if not x.is_positive:
                continue
            m = in_domain(x).argmax
            image = vervaat(x)
            assert in_domain(image).argmax == x.theta - m

    def test_bijection_between_sign_classes(self):
        for theta in range(2, 13, 2):
            pos = [
                x for x in positive_excursions_upto(theta)
                if x.theta == theta and in_domain(x) is not None
            ]
            images = {vervaat(x) for x in pos}
            assert len(images) == len(pos)
            negatives = {negate(x) for x in pos}
            assert images == negatives  # onto the negative unique-max class

    def test_vervaat_commutes_with_negate_via_classes(self):
        for x in unique_max_corpus(10):
            assert vervaat(negate(x)) == negate(vervaat(x))


class TestRotationTrichotomy:
    def test_k_zero(self):
        assert rotation_uniqueness_check(from_values([0, 1, 2, 1, 0]), 0) == SAME_EXCURSION

    def test_argmax_matches_vervaat(self):
        x = from_values([0, 1, 2, 1, 0])
        assert rotation_uniqueness_check(x, 2) == VALID_NEGATIVE_EXCURSION

    def test_tied_max_never_rotates(self):
        x = from_values([0, 1, 2, 1, 2, 1, 0])
        for k in range(1, x.theta):
            assert rotation_uniqueness_check(x, k) == NOT_AN_EXCURSION

    def test_trichotomy_exhaustive(self, corpus_theta12):
        for x in corpus_theta12:
            if x.theta > 10:
                continue
            w = in_domain(x)
            for k in range(x.theta + 1):
                got = rotation_uniqueness_check(x, k)
                if k in (0, x.theta):
                    assert got == SAME_EXCURSION
                elif w is not None and k == w.argmax:
                    assert got == VALID_NEGATIVE_EXCURSION
                else:
                    assert got == NOT_AN_EXCURSION


class TestGroup:
    def test_identity_differs_from_negation(self):
        x = from_values([0, 1, 0])
        elements = group_elements()
        assert elements["id"](x) != elements["-"](x)

    def test_involutions_and_commutation_exhaustive(self):
        for x in unique_max_corpus(12):
            assert negate(negate(x)) == x
            assert reverse(reverse(x)) == x
            assert vervaat(vervaat(x)) == x
            assert negate(reverse(x)) == reverse(negate(x))
            assert negate(vervaat(x)) == vervaat(negate(x))
            assert reverse(vervaat(x)) == vervaat(reverse(x))

    def test_table_closes_with_eight_elements(self):
        witnesses = unique_max_corpus(12)
        table = group_table(witnesses)
        names = set(group_elements())
        assert len(names) == 8
        assert set(table.values()) <= names
        assert len(table) == 64
        for name in names:
            assert table[("id", name)] == name
            assert table[(name, "id")] == name

    def test_every_element_is_an_involution_in_table(self):
        table = group_table(unique_max_corpus(12))
        for name in group_elements():
            assert table[(name, name)] == "id"

    def test_table_is_abelian(self):
        table = group_table(unique_max_corpus(12))
        for f, g in itertools.product(group_elements(), repeat=2):
            assert table[(f, g)] == table[(g, f)]
