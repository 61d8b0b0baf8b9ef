"""
How many excursions share a level profile?
==========================================

The number of positive excursions with level numbers (N_0, ..., N_{H-1})
is a product of binomials: each level h chooses how to split the N_{h+1}
children among its N_h parents.  The choice tuples biject onto the class,
which also gives a lazy exhaustive generator.
"""

from excursionkit import (
    LevelNumbers,
    brute_force,
    canonical_excursion,
    count_excursions,
    decompositions,
    enumerate_excursions,
    level_numbers,
)
from excursionkit.enumeration import catalan

n = LevelNumbers.of(1, 3, 2)
print("class", n, "holds", count_excursions(n), "excursions")

# the building blocks: distributions of m children among k parents
print("ways to split 2 among 3:", list(decompositions(2, 3)))

# every member, generated from its child-count code
for x in enumerate_excursions(n):
    print("  ", x.value_string())

# the canonical witness rises straight to the top
print("canonical member:", canonical_excursion(n))

# summing the class sizes over all profiles recovers the Catalan numbers
for total in range(1, 8):
    xs = brute_force(2 * total)
    classes = {}
    for x in xs:
        classes.setdefault(level_numbers(x).counts, 0)
        classes[level_numbers(x).counts] += 1
    total_count = sum(
        count_excursions(LevelNumbers(c)) for c in classes
    )
    print(f"theta = {2 * total:2d}: {len(classes):3d} classes, "
          f"{total_count:4d} excursions = Catalan({total - 1}) = {catalan(total - 1)}")
    assert total_count == len(xs)
