"""Level-number-preserving transformations: reversal, negation, shifts.

A shift relocates a bridge (a sub-path between two visits of a level h) to
another visit of the same level.  Shifts whose moved segment is the full
excursion of an individual form the subclass that, composed, reaches every
excursion with the same level numbers; :func:`shift_sequence` constructs
such a composition between any two of them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Excursion, Individual, individuals, level_numbers
from .errors import LevelNumbersMismatch, OutOfDomain

__all__ = [
    "ShiftOp",
    "ComposedShift",
    "reverse",
    "negate",
    "shift",
    "inverse",
    "compose",
    "shift_sequence",
    "excursion_shift_ops",
]


def reverse(x: Excursion) -> Excursion:
    """Run ``x`` backwards in time.  Preserves length and level numbers."""
    return Excursion(tuple(-y for y in reversed(x.jumps)))


def negate(x: Excursion) -> Excursion:
    """Mirror ``x`` across level 0, flipping its sign and height."""
    return Excursion(tuple(-y for y in x.jumps))


@dataclass(frozen=True)
class ShiftOp:
    """Relocation of the bridge ``x[a, b]`` to the visit of level ``h`` at ``c``.

    ``kind`` is ``"excursion"`` when the moved segment must be an
    individual's excursion (strictly above ``h`` in its interior), else
    ``"bridge"``.  With ``c`` equal to ``a`` or ``b`` the shift is the
    identity.
    """

    a: int
    b: int
    c: int
    h: int
    kind: str = "bridge"

    def __post_init__(self):
        if not (0 <= self.a <= self.b):
            raise ValueError("need 0 <= a <= b")
        if self.a < self.c < self.b:
            raise ValueError("insertion point c may not fall inside (a, b)")
        if self.h < 1:
            raise ValueError("shifts act at levels h >= 1")
        if self.kind not in ("bridge", "excursion"):
            raise ValueError(f"unknown kind {self.kind!r}")

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "h": self.h, "kind": self.kind}

    @classmethod
    def from_dict(cls, data: dict) -> "ShiftOp":
        return cls(
            int(data["a"]), int(data["b"]), int(data["c"]), int(data["h"]),
            str(data.get("kind", "bridge")),
        )


def _check_domain(x: Excursion, op: ShiftOp) -> None:
    if not x.is_positive:
        raise OutOfDomain("shifts are defined on positive excursions")
    theta = x.theta
    if op.b > theta or op.c > theta:
        raise OutOfDomain(f"indices exceed theta={theta}")
    vals = x.values
    for name, idx in (("a", op.a), ("b", op.b), ("c", op.c)):
        if vals[idx] != op.h:
            raise OutOfDomain(f"x_{name} = {vals[idx]} differs from h = {op.h}")
    if op.h > x.height - 1:
        raise OutOfDomain(f"h = {op.h} exceeds H(x) - 1 = {x.height - 1}")
    if op.kind == "excursion":
        if any(vals[n] <= op.h for n in range(op.a + 1, op.b)):
            raise OutOfDomain("segment (a, b) does not stay strictly above h")


def shift(x: Excursion, op: ShiftOp):
    """Apply ``op`` to ``x``; returns the image and the rank relabelling.

    The second component ``phi`` maps the rank of each individual of ``x``
    to the rank of its image in the result; it is a bijection preserving
    every level block.  Raises :class:`OutOfDomain` if ``x`` is not in the
    domain of ``op``.
    """
    _check_domain(x, op)
    y = x.jumps
    a, b, c = op.a, op.b, op.c
    if b <= c:
        new_jumps = y[:a] + y[b:c] + y[a:b] + y[c:]

        def relocate(n: int) -> int:
            if n < a or n >= c:
                return n
            return n + (c - b) if n < b else n - (b - a)

    else:
        new_jumps = y[:c] + y[a:b] + y[c:a] + y[b:]

        def relocate(n: int) -> int:
            if n < c or n >= b:
                return n
            return n - (a - c) if n >= a else n + (b - a)

    image = Excursion(new_jumps)
    rank_at_birth = {ind.birth: ind.rank for ind in individuals(image)}
    phi = tuple(rank_at_birth[relocate(ind.birth)] for ind in individuals(x))
    return image, phi


def inverse(op: ShiftOp) -> ShiftOp:
    """The shift undoing ``op`` (same kind, acting on the image)."""
    if op.b <= op.c:
        return ShiftOp(op.c - (op.b - op.a), op.c, op.a, op.h, op.kind)
    return ShiftOp(op.c, op.c + (op.b - op.a), op.b, op.h, op.kind)


@dataclass(frozen=True)
class ComposedShift:
    """A composition of shifts, applied left to right."""

    ops: tuple[ShiftOp, ...]

    def apply(self, x: Excursion):
        """Sequentially apply every op; (image, composed rank relabelling).

        Raises :class:`OutOfDomain` carrying the index of the first op whose
        domain does not contain the running excursion.
        """
        phi = tuple(range(x.theta // 2))
        for k, op in enumerate(self.ops):
            try:
                x, step = shift(x, op)
            except OutOfDomain as exc:
                raise OutOfDomain(exc.condition, stage=k) from exc
            phi = tuple(step[p] for p in phi)
        return x, phi

    def inverse(self) -> "ComposedShift":
        return ComposedShift(tuple(inverse(op) for op in reversed(self.ops)))

    def __len__(self) -> int:
        return len(self.ops)


def compose(ops) -> ComposedShift:
    """Bundle shifts into a partial map equal to their sequential action."""
    return ComposedShift(tuple(ops))


def _level_members(x: Excursion, h: int) -> list[Individual]:
    """Individuals of ``x`` at level h, in birth order (= rank order)."""
    return [ind for ind in individuals(x) if ind.level == h]


def _child_count_rows(x: Excursion, h: int) -> list[int]:
    """Children counts of the level-h individuals of ``x``, in birth order."""
    members = _level_members(x, h)
    below = _level_members(x, h + 1)
    counts = []
    for ind in members:
        counts.append(sum(1 for j in below if ind.birth < j.birth < ind.death))
    return counts


def _move_last_child(x: Excursion, h: int, src: Individual, dst: Individual) -> ShiftOp:
    """Shift reparenting the last child of ``src`` to the end of ``dst``'s brood."""
    child = max(
        (j for j in _level_members(x, h + 1) if src.birth < j.birth < src.death),
        key=lambda j: j.birth,
    )
    return ShiftOp(child.birth, child.death, dst.death - 1, h + 1, "excursion")


def shift_sequence(x: Excursion, target: Excursion) -> list[ShiftOp]:
    """Excursion shifts carrying ``x`` onto ``target``.

    Both arguments must be positive with equal level numbers.  Works level
    by level: at each level the per-individual child counts (in birth-rank
    order) are equalised with the target's by moving single child
    excursions between parents, lowest mismatching rank first, using the
    nearest later individual with spare or missing children as the partner.
    Once every level agrees the two excursions coincide, because the
    rank-indexed child counts determine the excursion; every intermediate
    excursion keeps the same level numbers.

    The returned ops replay with :func:`compose`; no attempt is made to
    minimise their number.
    """
    if not (x.is_positive and target.is_positive):
        raise LevelNumbersMismatch("both excursions must be positive")
    n = level_numbers(x)
    if n != level_numbers(target):
        raise LevelNumbersMismatch(
            f"level numbers differ: {n} vs {level_numbers(target)}"
        )
    ops: list[ShiftOp] = []
    cur = x
    for h in range(1, n.height - 1):
        tgt_counts = _child_count_rows(target, h)
        while True:
            cur_counts = _child_count_rows(cur, h)
            i = next(
                (k for k in range(len(cur_counts)) if cur_counts[k] != tgt_counts[k]),
                None,
            )
            if i is None:
                break
            members = _level_members(cur, h)
            if cur_counts[i] > tgt_counts[i]:
                r = next(
                    k for k in range(i + 1, len(cur_counts))
                    if cur_counts[k] < tgt_counts[k]
                )
                op = _move_last_child(cur, h, members[i], members[r])
            else:
                r = next(
                    k for k in range(i + 1, len(cur_counts))
                    if cur_counts[k] > tgt_counts[k]
                )
                op = _move_last_child(cur, h, members[r], members[i])
            ops.append(op)
            cur, _ = shift(cur, op)
    if cur != target:
        raise AssertionError("child-count equalisation did not reach the target")
    return ops


def excursion_shift_ops(x: Excursion) -> list[ShiftOp]:
    """Every excursion shift applicable to ``x`` (including identities).

    One op per (individual at level >= 1, visit of its level outside its
    lifespan); the moved segment is always that individual's excursion.
    """
    vals = x.values
    ops = []
    for ind in individuals(x):
        if ind.level < 1:
            continue
        sites = [
            n for n in range(x.theta + 1)
            if vals[n] == ind.level and not (ind.birth < n < ind.death)
        ]
        for c in sites:
            ops.append(ShiftOp(ind.birth, ind.death, c, ind.level, "excursion"))
    return ops
