"""Exact counting and exhaustive generation of fixed-level-number excursions.

The count of positive excursions with level numbers N is a product of
binomials, one per consecutive level pair, and the proof of that formula is
a bijection: a choice of per-parent child counts at every level determines
the excursion.  Both directions are implemented here, together with the
plain brute-force generator the rest of the test suite uses as an oracle.
"""

from __future__ import annotations

import math
from typing import Iterator, Sequence

from .core import Excursion, LevelNumbers, level_numbers
from .errors import BoundExceeded, InvalidDecomposition
from .trees import OrderedTree, contour

__all__ = [
    "count_excursions",
    "decompositions",
    "all_decompositions",
    "eta",
    "enumerate_excursions",
    "canonical_excursion",
    "brute_force",
    "catalan",
]

BRUTE_FORCE_MAX_THETA = 28


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def count_excursions(n: LevelNumbers) -> int:
    """How many positive excursions have level numbers ``n``.  Exact.

    The product runs over level pairs (h, h+1) for h = 1 .. height-2; with
    fewer than three levels it is empty and the class is a singleton.
    """
    total = 1
    for h in range(1, n.height - 1):
        total *= math.comb(n[h + 1] + n[h] - 1, n[h] - 1)
    return total


def decompositions(m: int, k: int) -> Iterator[tuple[int, ...]]:
    """All k-tuples of nonnegative integers summing to m, lexicographically.

    There are binomial(m + k - 1, k - 1) of them.
    """
    if m < 0 or k < 1:
        raise ValueError("need m >= 0 and k >= 1")
    if k == 1:
        yield (m,)
        return
    prefix = [0] * k
    def rec(pos: int, remaining: int) -> Iterator[tuple[int, ...]]:
        if pos == k - 1:
            prefix[pos] = remaining
            yield tuple(prefix)
            return
        for v in range(remaining + 1):
            prefix[pos] = v
            yield from rec(pos + 1, remaining - v)

    yield from rec(0, m)


def all_decompositions(n: LevelNumbers) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Iterate the decomposition set for ``n``: one child-count tuple per level.

    Element h - 1 of each yielded tuple distributes the level-(h+1)
    individuals among the N_h parents at level h, for h = 1 .. height-2.
    """
    def rec(h: int, acc: list[tuple[int, ...]]):
        if h > n.height - 2:
            yield tuple(acc)
            return
        for s in decompositions(n[h + 1], n[h]):
            acc.append(s)
            yield from rec(h + 1, acc)
            acc.pop()

    yield from rec(1, [])


def eta(s: Sequence[tuple[int, ...]], n: LevelNumbers) -> Excursion:
    """The excursion whose level-h parents have child counts ``s[h-1]``.

    Builds the tree level by level (children of earlier parents ranked
    earlier) and takes its contour.  Injective in ``s``; its image is the
    whole class of excursions with level numbers ``n``.
    """
    expect = n.height - 2
    if len(s) != max(expect, 0):
        raise InvalidDecomposition(
            f"need {max(expect, 0)} levels of child counts, got {len(s)}"
        )
    for h in range(1, n.height - 1):
        row = s[h - 1]
        if len(row) != n[h] or any(c < 0 for c in row) or sum(row) != n[h + 1]:
            raise InvalidDecomposition(
                f"level {h}: {row} does not distribute {n[h + 1]} children "
                f"among {n[h]} parents"
            )
    # per-node child counts in level order: root, then each level's parents
    counts: list[int] = [n[1]] if n.height > 1 else [0]
    for h in range(1, n.height):
        if h <= n.height - 2:
            counts.extend(s[h - 1])
        else:
            counts.extend([0] * n[h])  # top level: all leaves
    # assemble nested tuples bottom-up (children ids follow parents)
    total = len(counts)
    first_child = [0] * total
    acc = 1
    for i in range(total):
        first_child[i] = acc
        acc += counts[i]
    nested: list[tuple] = [()] * total
    for i in range(total - 1, -1, -1):
        nested[i] = tuple(nested[first_child[i] + j] for j in range(counts[i]))
    return contour(OrderedTree(nested[0]))


def enumerate_excursions(n: LevelNumbers) -> Iterator[Excursion]:
    """Generate every positive excursion with level numbers ``n`` lazily."""
    for s in all_decompositions(n):
        yield eta(s, n)


def canonical_excursion(n: LevelNumbers) -> Excursion:
    """The witness excursion of a level-number class.

    Rises straight to the height, then walking the levels downward lets the
    remaining individuals of each level be born and die immediately.
    """
    h_top = n.height
    jumps = [1] * h_top
    for h in range(h_top - 1, 0, -1):
        jumps.append(-1)
        for _ in range(n[h] - 1):
            jumps.extend((1, -1))
    jumps.append(-1)
    x = Excursion(tuple(jumps))
    assert level_numbers(x) == n
    return x


def brute_force(theta: int) -> list[Excursion]:
    """All positive excursions of length ``theta`` by backtracking.

    Prunes branches that cannot return to 0; refuses theta beyond
    ``BRUTE_FORCE_MAX_THETA`` (the count is Catalan(theta/2 - 1)).
    """
    if theta < 2 or theta % 2:
        raise ValueError("theta must be an even number >= 2")
    if theta > BRUTE_FORCE_MAX_THETA:
        raise BoundExceeded(f"theta = {theta} exceeds {BRUTE_FORCE_MAX_THETA}")
    out: list[Excursion] = []
    jumps = [1] * theta
    # positions 1 .. theta-2 are free; level must stay >= 1 there and the
    # remaining steps must suffice to come back to 1
    def rec(pos: int, level: int):
        if pos == theta - 1:
            if level == 1:
                out.append(Excursion(tuple(jumps)))
            return
        remaining = theta - 1 - pos
        if level + 1 <= remaining:  # room to go up and still return
            jumps[pos] = 1
            rec(pos + 1, level + 1)
        if level > 1:
            jumps[pos] = -1
            rec(pos + 1, level - 1)
            jumps[pos] = 1
    jumps[-1] = -1
    rec(1, 1)
    return out
