"""
The transformations that preserve level numbers
===============================================

Reversal, negation, and bridge shifts all keep the per-level individual
counts.  A shift relocates the sub-path between two visits of a level to
another visit of that level; shifts of whole individual excursions are
enough to connect any two excursions with the same level profile, and
the constructive search below returns an explicit shift list.
"""

from excursionkit import (
    ShiftOp,
    compose,
    from_values,
    level_numbers,
    negate,
    reverse,
    shift,
    shift_sequence,
)
from excursionkit.transforms import excursion_shift_ops

x = from_values([0, 1, 2, 3, 2, 1, 2, 1, 0])
print("x          =", x, "  levels", level_numbers(x))
print("reversed   =", reverse(x))
print("negated    =", negate(x))

# a bridge shift: move x[1..5] to the level-1 visit at t=7
image, phi = shift(x, ShiftOp(a=1, b=5, c=7, h=1))
print("shifted    =", image, "  levels", level_numbers(image))
print("rank relabelling phi =", phi)

# an explicit route between two members of the same class
target = from_values([0, 1, 2, 1, 2, 3, 2, 1, 0])
ops = shift_sequence(x, target)
print(f"{len(ops)} excursion shift(s) from x to target:")
for op in ops:
    print("  ", op.to_dict())
replay, _ = compose(ops).apply(x)
assert replay == target

# the orbit of x under excursion shifts is exactly its level-number class
seen = {x}
frontier = [x]
while frontier:
    nxt = []
    for y in frontier:
        for op in excursion_shift_ops(y):
            z, _ = shift(y, op)
            if z not in seen:
                seen.add(z)
                nxt.append(z)
    frontier = nxt
print("orbit size:", len(seen), "(= class size 2)")
for member in sorted(seen, key=lambda e: e.jumps):
    print("  ", member.value_string())
