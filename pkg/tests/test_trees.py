"""Tree/excursion contour bijection and unordered-tree equivalence."""

from __future__ import annotations

import itertools

import pytest

from excursionkit.core import from_values, individuals, level_numbers
from excursionkit.trees import OrderedTree, child_counts, contour, equivalent, tree_of

from conftest import positive_excursions_upto


def reorder(tree: OrderedTree, perms) -> OrderedTree:
    """Permute the children of node i by perms[i] (ids in level order)."""
    nested: list[tuple] = [()] * tree.size
    for i in range(tree.size - 1, -1, -1):
        kids = tree.children[i]
        nested[i] = tuple(nested[kids[j]] for j in perms[i])
    return OrderedTree(nested[0])


class TestTreeOf:
    def test_single_node(self):
        t = tree_of(from_values([0, 1, 0]))
        assert t.nested == ()
        assert t.size == 1

    def test_two_leaf_children(self):
        t = tree_of(from_values([0, 1, 2, 1, 2, 1, 0]))
        assert t.nested == ((), ())

    def test_mixed_children(self):
        t = tree_of(from_values([0, 1, 2, 3, 2, 1, 2, 1, 0]))
        assert t.nested == (((),), ())
        assert t.children[0] == (1, 2)
        assert t.levels == (0, 1, 1, 2)

    def test_node_ids_are_individual_ranks(self, corpus_theta12):
        for x in corpus_theta12:
            t = tree_of(x)
            inds = individuals(x)
            assert t.size == len(inds)
            assert t.levels == tuple(i.level for i in inds)
            # children ordered by birth occupy consecutive ids (contiguity)
            for kids in t.children:
                if kids:
                    assert list(kids) == list(range(kids[0], kids[-1] + 1))

    def test_child_counts_match_tree(self, corpus_theta12):
        for x in corpus_theta12:
            t = tree_of(x)
            assert child_counts(x) == [t.child_count(i) for i in range(t.size)]

    def test_rejects_negative(self):
        from excursionkit.transforms import negate

        with pytest.raises(ValueError):
            tree_of(negate(from_values([0, 1, 0])))


class TestContour:
    def test_single_node(self):
        assert contour(OrderedTree(())).values == (0, 1, 0)

    def test_two_leaves(self):
        assert contour(OrderedTree(((), ()))).values == (0, 1, 2, 1, 2, 1, 0)

    def test_path_of_three(self):
        assert contour(OrderedTree((((),),))).values == (0, 1, 2, 3, 2, 1, 0)

    def test_length_counts_nodes(self):
        t = OrderedTree(((), ((),), ()))
        assert contour(t).theta == 2 * t.size

    def test_round_trip_exhaustive(self, corpus_theta14):
        for x in corpus_theta14:
            assert contour(tree_of(x)) == x

    def test_reverse_round_trip(self, corpus_theta12):
        for x in corpus_theta12:
            t = tree_of(x)
            assert tree_of(contour(t)) == t

    def test_deep_path_no_recursion_error(self):
        depth = 5000
        jumps = (1,) * depth + (-1,) * depth
        x = from_values([0] + list(range(1, depth + 1)) + list(range(depth - 1, -1, -1)))
        assert x.jumps == jumps
        t = tree_of(x)
        assert t.size == depth
        assert contour(t) == x


class TestEquivalent:
    def test_self_identity(self):
        t = tree_of(from_values([0, 1, 2, 3, 2, 1, 2, 1, 0]))
        ok, xi = equivalent(t, t)
        assert ok
        assert xi == {i: i for i in range(t.size)}

    def test_swapped_children(self):
        t1 = tree_of(from_values([0, 1, 2, 3, 2, 1, 2, 1, 0]))
        t2 = tree_of(from_values([0, 1, 2, 1, 2, 3, 2, 1, 0]))
        ok, xi = equivalent(t1, t2)
        assert ok
        assert xi[0] == 0

    def test_different_profiles(self):
        t1 = tree_of(from_values([0, 1, 2, 1, 2, 1, 0]))
        t2 = tree_of(from_values([0, 1, 2, 3, 2, 1, 0]))
        ok, xi = equivalent(t1, t2)
        assert not ok and xi is None

    def test_witness_properties(self, corpus_theta12):
        xs = [x for x in corpus_theta12 if x.theta == 10]
        for x1, x2 in itertools.product(xs[:12], xs[:12]):
            t1, t2 = tree_of(x1), tree_of(x2)
            ok, xi = equivalent(t1, t2)
            if not ok:
                continue
            assert sorted(xi) == list(range(t1.size))
            assert sorted(xi.values()) == list(range(t2.size))
            assert xi[0] == 0
            for node in range(t1.size):
                assert t1.levels[node] == t2.levels[xi[node]]
                assert t1.child_count(node) == t2.child_count(xi[node])
                if node:
                    assert xi[t1.parents[node]] == t2.parents[xi[node]]

    def test_equivalence_implies_same_level_numbers(self, corpus_theta12):
        for x1 in corpus_theta12:
            for x2 in corpus_theta12:
                if x1.theta != x2.theta or x1.theta > 8:
                    continue
                ok, _ = equivalent(tree_of(x1), tree_of(x2))
                if ok:
                    assert level_numbers(x1) == level_numbers(x2)
                    assert sorted(child_counts(x1)) == sorted(child_counts(x2))

    def test_some_ordering_reproduces_any_equivalent_excursion(self):
        # scrambling children orders never leaves the equivalence class,
        # and some ordering recovers each member excursion
        for x in positive_excursions_upto(8):
            t = tree_of(x)
            others = [
                x2
                for x2 in positive_excursions_upto(8)
                if x2.theta == x.theta and equivalent(tree_of(x2), t)[0]
            ]
            reachable = set()
            per_node = [
                list(itertools.permutations(range(t.child_count(i))))
                for i in range(t.size)
            ]
            for perms in itertools.product(*per_node):
                reachable.add(contour(reorder(t, perms)))
            assert reachable == set(others)


class TestJson:
    def test_nested_arrays(self):
        t = OrderedTree.from_json_obj([[], [[]]])
        assert t.nested == ((), ((),))
        assert t.to_json_obj() == [[], [[]]]
        assert str(t) == "[[],[[]]]"
