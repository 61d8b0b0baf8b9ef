"""Ordered rooted trees and the contour bijection with positive excursions.

A tree is stored as nested tuples: a node is the tuple of its children, so
``()`` is a leaf and ``((), ((),))`` is a root with a leaf child and a child
that has one leaf child.  Two trees are equal as ordered trees exactly when
the nested tuples are equal, and the JSON encoding (nested arrays) falls out
for free.

Tree walks here are iterative; path-shaped trees are as deep as half the
excursion length, which would blow the recursion limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .core import Excursion, _individuals_with_parents

__all__ = ["OrderedTree", "tree_of", "contour", "equivalent", "child_counts"]


def _as_nested_tuple(obj) -> tuple:
    """Normalise nested iterables (lists, tuples) into nested tuples."""
    items = [obj]
    kids: list[list[int]] = [[]]
    stack = [0]
    while stack:
        i = stack.pop()
        if isinstance(items[i], (str, bytes)):
            raise TypeError("tree nodes must be sequences of child nodes")
        for child in items[i]:
            items.append(child)
            kids.append([])
            kids[i].append(len(items) - 1)
            stack.append(len(items) - 1)
    # children were created after their parents, so reverse order freezes
    # bottom-up
    frozen: list[tuple] = [()] * len(items)
    for i in range(len(items) - 1, -1, -1):
        frozen[i] = tuple(frozen[j] for j in kids[i])
    return frozen[0]


def _post_order(nested: tuple) -> list[tuple]:
    """All subtree tuples, children before parents."""
    order = []
    walk = [(nested, False)]
    while walk:
        node, expanded = walk.pop()
        if expanded:
            order.append(node)
        else:
            walk.append((node, True))
            for child in node:
                walk.append((child, False))
    return order


@dataclass(frozen=True)
class OrderedTree:
    """An ordered rooted tree given by its nested-tuple structure.

    Node ids follow level order (breadth first, children of earlier parents
    first), with the root as node 0; this matches the rank assignment of
    :func:`excursionkit.core.individuals` when the tree comes from an
    excursion.
    """

    nested: tuple

    def __post_init__(self):
        object.__setattr__(self, "nested", _as_nested_tuple(self.nested))

    @property
    def size(self) -> int:
        """Number of nodes."""
        return len(self.parents)

    @cached_property
    def _level_order(self) -> tuple[tuple, ...]:
        """(subtree, parent id, level) per node id, in level order."""
        nodes = [self.nested]
        parents = [-1]
        levels = [0]
        frontier = [0]
        while frontier:
            nxt = []
            for pid in frontier:
                for child in nodes[pid]:
                    nodes.append(child)
                    parents.append(pid)
                    levels.append(levels[pid] + 1)
                    nxt.append(len(nodes) - 1)
            frontier = nxt
        return tuple(nodes), tuple(parents), tuple(levels)

    @property
    def nodes(self) -> tuple[tuple, ...]:
        """Subtree rooted at each node id."""
        return self._level_order[0]

    @property
    def parents(self) -> tuple[int, ...]:
        return self._level_order[1]

    @property
    def levels(self) -> tuple[int, ...]:
        return self._level_order[2]

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        """Children ids of each node, preserving the tree's child order."""
        kids = [[] for _ in range(self.size)]
        for node, parent in enumerate(self.parents):
            if parent >= 0:
                kids[parent].append(node)
        return tuple(tuple(k) for k in kids)

    def child_count(self, node: int) -> int:
        return len(self.children[node])

    def to_json_obj(self):
        """Nested lists, e.g. [[], [[]]]."""
        frozen: dict[int, list] = {}
        for node in _post_order(self.nested):
            if id(node) not in frozen:
                frozen[id(node)] = [frozen[id(c)] for c in node]
        return frozen[id(self.nested)]

    @classmethod
    def from_json_obj(cls, obj) -> "OrderedTree":
        return cls(obj)

    def __str__(self) -> str:
        return repr(self.to_json_obj()).replace(" ", "")


def tree_of(x: Excursion) -> OrderedTree:
    """The ordered tree of a positive excursion.

    Node i is individual i in level order; children are ordered by birth
    time, so siblings occupy consecutive ids.
    """
    if not x.is_positive:
        raise ValueError("tree_of is defined for positive excursions")
    inds, parents = _individuals_with_parents(x)
    kids: list[list[int]] = [[] for _ in inds]
    for ind, parent in zip(inds, parents):
        if parent >= 0:
            kids[parent].append(ind.rank)
    for k in kids:
        k.sort(key=lambda r: inds[r].birth)
    # every child has a larger rank than its parent, so assembling in
    # decreasing rank order sees all children already frozen
    nested: list[tuple] = [()] * len(inds)
    for rank in range(len(inds) - 1, -1, -1):
        nested[rank] = tuple(nested[r] for r in kids[rank])
    return OrderedTree(nested[0])


def contour(tree: OrderedTree) -> Excursion:
    """The excursion tracing ``tree``: +1 entering a node, -1 leaving it.

    A tree with l+1 nodes gives an excursion of length 2(l+1), and
    ``tree_of(contour(tree))`` equals ``tree``.
    """
    jumps = []
    stack = [(tree.nested, False)]
    while stack:
        node, leaving = stack.pop()
        if leaving:
            jumps.append(-1)
        else:
            jumps.append(1)
            stack.append((node, True))
            for child in reversed(node):
                stack.append((child, False))
    return Excursion(tuple(jumps))


def _canonical_memo(nested: tuple) -> dict[int, tuple]:
    """id(subtree) -> canonical form with children sorted recursively."""
    memo: dict[int, tuple] = {}
    for node in _post_order(nested):
        if id(node) not in memo:
            memo[id(node)] = tuple(sorted(memo[id(c)] for c in node))
    return memo


def equivalent(t1: OrderedTree, t2: OrderedTree):
    """Test isomorphism as rooted trees with unordered children.

    Returns ``(True, xi)`` with a witness node map ``xi`` (dict from node
    ids of ``t1`` to node ids of ``t2``) or ``(False, None)``.  The witness
    sends root to root, preserves levels and child counts, and commutes
    with the parent maps.
    """
    memo1 = _canonical_memo(t1.nested)
    memo2 = _canonical_memo(t2.nested)
    if memo1[id(t1.nested)] != memo2[id(t2.nested)]:
        return False, None
    n1, n2 = t1.nodes, t2.nodes
    xi: dict[int, int] = {0: 0}
    queue = [(0, 0)]
    while queue:
        a, b = queue.pop()
        kids_a = sorted(t1.children[a], key=lambda i: memo1[id(n1[i])])
        kids_b = sorted(t2.children[b], key=lambda i: memo2[id(n2[i])])
        for ka, kb in zip(kids_a, kids_b):
            xi[ka] = kb
            queue.append((ka, kb))
    return True, xi


def child_counts(x: Excursion) -> list[int]:
    """Number of children of each individual of ``x``, in level order.

    Works for both signs and avoids building the nested tree, so it is safe
    on very long excursions.
    """
    inds, parents = _individuals_with_parents(x)
    counts = [0] * len(inds)
    for parent in parents:
        if parent >= 0:
            counts[parent] += 1
    return counts
