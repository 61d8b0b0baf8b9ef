"""
Excursions, their individuals, and the tree behind every path
=============================================================

An excursion is a ±1-step path from 0 back to 0 that keeps one strict
sign in between.  Each up-step of a positive excursion opens an
"individual" that lives until the path first returns to its birth level;
nesting of lifespans is exactly an ordered rooted tree.
"""

from excursionkit import (
    from_index_sequence,
    from_values,
    index_sequence,
    individuals,
    level_numbers,
)
from excursionkit.trees import contour, equivalent, tree_of

x = from_values([0, 1, 2, 3, 2, 1, 2, 1, 0])
print("excursion:", x)
print("length theta =", x.theta, " height =", x.height)

# one individual per up jump: (birth time, level, death time)
for ind in individuals(x):
    print(f"  individual {ind.rank}: born t={ind.birth} at level {ind.level}, "
          f"dies t={ind.death}")

# counting individuals per level gives the central invariant
print("level numbers:", level_numbers(x))

# the index sequence writes the excursion as a double-occurrence word
word = index_sequence(x)
print("index sequence:", word)
assert from_index_sequence(word) == x

# individuals nest into an ordered tree; its contour walk recovers the path
tree = tree_of(x)
print("tree (nested arrays):", tree)
assert contour(tree) == x

# trees with reordered children are equivalent but trace different paths
y = from_values([0, 1, 2, 1, 2, 3, 2, 1, 0])
ok, witness = equivalent(tree_of(x), tree_of(y))
print("equivalent to the child-swapped tree:", ok, " witness:", witness)
