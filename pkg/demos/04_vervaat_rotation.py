"""
Rotating an excursion at its peak
=================================

When a positive excursion attains its height at a single coordinate,
rotating the jumps there produces a negative excursion whose level
numbers are the original ones read backwards; rotating anywhere else
never yields an excursion.  With sign reflection and time reversal the
rotation generates an eight-element commuting group.
"""

from excursionkit import from_values, level_numbers, vervaat
from excursionkit.vervaat import (
    group_table,
    in_domain,
    rotation_uniqueness_check,
)

x = from_values([0, 1, 2, 1, 2, 3, 2, 1, 0])
witness = in_domain(x)
print("x =", x, " argmax at t =", witness.argmax)

image = vervaat(x)
print("rotated:", image)
print("levels of x      :", level_numbers(x))
print("levels of image  :", level_numbers(image), "(reversed)")
assert vervaat(image) == x  # applying it twice returns home

# the rotation trichotomy, coordinate by coordinate
for k in range(x.theta + 1):
    print(f"  rotate at {k}: {rotation_uniqueness_check(x, k)}")

# the eight composite maps close under composition; witnesses up to
# theta = 10 are needed to tell the rotation from negated reversal
from excursionkit import brute_force, negate  # noqa: E402

witnesses = []
for theta in range(2, 11, 2):
    for y in brute_force(theta):
        if in_domain(y) is not None:
            witnesses.extend((y, negate(y)))
table = group_table(witnesses)
names = sorted({name for pair in table for name in pair})
print("\ncomposition table (row after column):")
print("      " + "  ".join(f"{n:>4}" for n in names))
for f in names:
    row = "  ".join(f"{table[(f, g)]:>4}" for g in names)
    print(f"{f:>4}: {row}")
