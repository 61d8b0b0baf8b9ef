"""Lattice excursions and their combinatorial anatomy.

An excursion is a finite ±1-step path that starts and ends at 0 and keeps a
single strict sign in between.  Every up jump of a positive excursion opens
an *individual* (a matched rise/return pair), and counting individuals per
level gives the *level numbers*, the invariant everything else in this
package is organised around.

All types here are immutable values: they can be shared between threads and
used as dict keys.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import MalformedSequence, NotAnExcursion

__all__ = [
    "Excursion",
    "Individual",
    "LevelNumbers",
    "from_jumps",
    "from_values",
    "individuals",
    "level_numbers",
    "index_sequence",
    "from_index_sequence",
]

INTERIOR_ZERO = "interior-zero"
NONZERO_ENDPOINT = "nonzero-endpoint"
MIXED_SIGN = "mixed-sign"


@dataclass(frozen=True)
class Excursion:
    """A validated excursion, identified by its jump sequence.

    Construction validates the excursion contract; use :func:`from_jumps`
    or :func:`from_values` rather than spelling out the tuple by hand.
    """

    jumps: tuple[int, ...]

    def __post_init__(self):
        jumps = tuple(self.jumps)
        object.__setattr__(self, "jumps", jumps)
        _validate_jumps(jumps)

    @cached_property
    def values(self) -> tuple[int, ...]:
        """Path values x_0 .. x_theta (length theta + 1)."""
        vals = [0]
        for y in self.jumps:
            vals.append(vals[-1] + y)
        return tuple(vals)

    @property
    def theta(self) -> int:
        """Length of the excursion (an even number of jumps)."""
        return len(self.jumps)

    @cached_property
    def height(self) -> int:
        """Signed height: max value if positive, min value if negative."""
        return max(self.values) if self.sign > 0 else min(self.values)

    @property
    def sign(self) -> int:
        """+1 for a positive excursion, -1 for a negative one."""
        return self.jumps[0]

    @property
    def is_positive(self) -> bool:
        return self.sign > 0

    def to_dict(self) -> dict:
        return {"jumps": list(self.jumps)}

    @classmethod
    def from_dict(cls, data: dict) -> "Excursion":
        return cls(tuple(int(y) for y in data["jumps"]))

    def value_string(self) -> str:
        return " ".join(str(v) for v in self.values)

    def __str__(self) -> str:
        return self.value_string()


def _validate_jumps(jumps: tuple[int, ...]) -> None:
    if not jumps:
        raise ValueError("empty jump sequence is not an excursion")
    for y in jumps:
        if y not in (1, -1):
            raise ValueError(f"jump {y!r} is not +1 or -1")
    pos = neg = False
    level = 0
    for n, y in enumerate(jumps):
        level += y
        if level == 0:
            if n != len(jumps) - 1:
                raise NotAnExcursion(INTERIOR_ZERO, f"returns to 0 at n={n + 1}")
        elif level > 0:
            pos = True
        else:
            neg = True
        if pos and neg:
            # Unreachable with +-1 steps (a sign change passes through 0)
            # but kept so the contract is stated once, in one place.
            raise NotAnExcursion(MIXED_SIGN)
    if level != 0:
        raise NotAnExcursion(NONZERO_ENDPOINT, f"ends at {level}")


def from_jumps(jumps: Iterable[int]) -> Excursion:
    """Build a validated excursion from a sequence of ±1 jumps."""
    return Excursion(tuple(jumps))


def from_values(values: Sequence[int]) -> Excursion:
    """Build an excursion from its path values (0, x_1, ..., 0)."""
    if len(values) < 2:
        raise ValueError("need at least two values")
    if values[0] != 0:
        raise NotAnExcursion(NONZERO_ENDPOINT, "does not start at 0")
    jumps = []
    for a, b in zip(values, values[1:]):
        if abs(b - a) != 1:
            raise ValueError(f"step {a}->{b} is not a +-1 jump")
        jumps.append(b - a)
    return Excursion(tuple(jumps))


@dataclass(frozen=True)
class Individual:
    """A matched rise/return pair of an excursion.

    Born at time ``birth`` on level ``level``, dead at time ``death`` (the
    first return to its birth level); ``rank`` is the position in level
    order: first by |level|, then by birth time.
    """

    birth: int
    level: int
    death: int
    rank: int

    @property
    def lifetime(self) -> int:
        return self.death - self.birth


def _scan_individuals(x: Excursion) -> list[tuple[int, int, int, int]]:
    """Return (birth, level, death, parent_birth) tuples in birth order.

    ``parent_birth`` is -1 for the root.  Works for both signs: a negative
    excursion is scanned as its mirror image and levels are negated.
    """
    sign = x.sign
    stack: list[int] = []  # indices into out of the open individuals
    out: list[list[int]] = []
    level = 0
    for n, y in enumerate(x.jumps):
        if y == sign:  # opens an individual at the current level
            parent = out[stack[-1]][0] if stack else -1
            stack.append(len(out))
            out.append([n, level, -1, parent])
        else:
            out[stack.pop()][2] = n + 1
        level += y
    return [tuple(rec) for rec in out]


def _individuals_with_parents(x: Excursion) -> tuple[list[Individual], list[int]]:
    """Level-ordered individuals plus the parent rank of each (root: -1)."""
    recs = _scan_individuals(x)
    order = sorted(range(len(recs)), key=lambda i: (abs(recs[i][1]), recs[i][0]))
    rank_of_birth = {recs[i][0]: rank for rank, i in enumerate(order)}
    inds = []
    parents = []
    for rank, i in enumerate(order):
        birth, level, death, parent_birth = recs[i]
        inds.append(Individual(birth, level, death, rank))
        parents.append(-1 if parent_birth < 0 else rank_of_birth[parent_birth])
    return inds, parents


def individuals(x: Excursion) -> list[Individual]:
    """All individuals of ``x`` in level order.

    There are exactly theta/2 of them; the root (birth 0, level 0, death
    theta) comes first.  For a negative excursion an individual opens on a
    -1 jump and its level is negative, mirroring the positive rule.
    """
    return _individuals_with_parents(x)[0]


@dataclass(frozen=True)
class LevelNumbers:
    """Occupation counts of individuals per level, indexed by |level|.

    ``counts[i]`` is the number of individuals born at level ``i`` for a
    positive excursion, at level ``-i`` for a negative one.  Stored without
    trailing zeros, so ``height`` (the extinction index) is ``len(counts)``.
    """

    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        while counts and counts[-1] == 0:
            counts = counts[:-1]
        object.__setattr__(self, "counts", counts)
        if not counts:
            raise ValueError("level numbers must contain at least the root")
        if counts[0] != 1:
            raise ValueError("level 0 must hold exactly the root")
        if any(c <= 0 for c in counts):
            raise ValueError("interior level numbers must be positive")

    @classmethod
    def of(cls, *counts: int) -> "LevelNumbers":
        return cls(tuple(counts))

    @property
    def total(self) -> int:
        """Total number of individuals (theta/2 for a matching excursion)."""
        return sum(self.counts)

    @property
    def height(self) -> int:
        """Extinction index: first level with no individuals."""
        return len(self.counts)

    def __getitem__(self, h: int) -> int:
        return self.counts[h] if 0 <= h < len(self.counts) else 0

    def __iter__(self):
        return iter(self.counts)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.counts) + ")"


def level_numbers(x: Excursion) -> LevelNumbers:
    """Count individuals of ``x`` per level (indexed by |level|)."""
    counts = [0] * abs(x.height)
    for ind in individuals(x):
        counts[abs(ind.level)] += 1
    return LevelNumbers(tuple(counts))


def index_sequence(x: Excursion) -> tuple[int, ...]:
    """Write ``x`` as the double-occurrence word of its individual ranks.

    Rank i appears at the birth time of individual i and one step before
    its death time; entry 0 sits at positions 0 and theta-1.
    """
    seq = [0] * x.theta
    for ind in individuals(x):
        seq[ind.birth] = ind.rank
        seq[ind.death - 1] = ind.rank
    return tuple(seq)


def from_index_sequence(entries: Sequence[int], sign: int = 1) -> Excursion:
    """Rebuild an excursion from a double-occurrence word.

    The first occurrence of a symbol opens an individual (a ``sign`` jump),
    the second closes it.  Raises :class:`MalformedSequence` if any symbol
    does not appear exactly twice or two symbols cross.  Symbols need not be
    the canonical level-order ranks; the round trip through
    :func:`index_sequence` re-canonicalises them.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not entries:
        raise MalformedSequence("empty sequence")
    seen: dict[int, int] = {}
    for s in entries:
        seen[s] = seen.get(s, 0) + 1
    bad = [s for s, k in seen.items() if k != 2]
    if bad:
        raise MalformedSequence(f"symbols not appearing exactly twice: {sorted(bad)}")
    jumps = []
    open_stack: list[int] = []
    opened: set[int] = set()
    for s in entries:
        if s not in opened:
            opened.add(s)
            open_stack.append(s)
            jumps.append(sign)
        else:
            if not open_stack or open_stack[-1] != s:
                raise MalformedSequence(f"crossing occurrences at symbol {s}")
            open_stack.pop()
            jumps.append(-sign)
    try:
        return Excursion(tuple(jumps))
    except NotAnExcursion as exc:
        # e.g. the root symbol closes before the last position
        raise MalformedSequence(f"does not encode an excursion ({exc})") from exc
