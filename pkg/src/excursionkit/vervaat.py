"""Rotation of unique-maximum excursions at their argmax, and its algebra.

Rotating a positive excursion at the coordinate of its height gives a
negative excursion exactly when that coordinate is unique (equivalently,
the level just below the height holds a single individual); the level
numbers of the image read the original ones backwards.  Together with sign
reflection and time reversal this generates a small commuting group of
transformations on the unique-maximum class.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Excursion, level_numbers
from .errors import ExcursionKitError, NotAnExcursion
from .transforms import negate, reverse

__all__ = [
    "UniqueMaxWitness",
    "NotUniqueMax",
    "in_domain",
    "vervaat",
    "rotation_uniqueness_check",
    "SAME_EXCURSION",
    "VALID_NEGATIVE_EXCURSION",
    "NOT_AN_EXCURSION",
    "group_elements",
    "group_table",
]


class NotUniqueMax(ExcursionKitError):
    """The excursion attains its height more than once."""

    def __init__(self, detail: str = ""):
        super().__init__(detail or "height attained at several coordinates")
        self.reason = "not-unique-max"


@dataclass(frozen=True)
class UniqueMaxWitness:
    """Why an excursion lies in the unique-maximum class.

    ``argmax`` is the one coordinate attaining the height; the class is
    equivalently characterised by a single individual on the level just
    below the height, which ``top_level_single`` records.
    """

    argmax: int
    top_level_single: bool = True


def in_domain(x: Excursion) -> UniqueMaxWitness | None:
    """Witness that ``x`` attains its height exactly once, else None.

    Checks both characterisations (unique argmax; one individual on the
    level below the height) and insists they agree.
    """
    hits = [n for n, v in enumerate(x.values) if v == x.height]
    by_levels = level_numbers(x).counts[-1] == 1
    if (len(hits) == 1) != by_levels:
        raise AssertionError("unique-argmax and level-count characterisations differ")
    return UniqueMaxWitness(hits[0]) if by_levels else None


def vervaat(x: Excursion) -> Excursion:
    """Rotate ``x`` at its unique argmax; sign flips, height negates.

    The level numbers of the image, indexed from its own origin, are the
    reversed level numbers of ``x``; applying the transform twice gives
    ``x`` back.  Raises :class:`NotUniqueMax` outside the unique-maximum
    class (by the rotation trichotomy, no excursion can come out of a tied
    maximum).
    """
    witness = in_domain(x)
    if witness is None:
        raise NotUniqueMax()
    m = witness.argmax
    return Excursion(x.jumps[m:] + x.jumps[:m])


SAME_EXCURSION = "the-same-excursion"
VALID_NEGATIVE_EXCURSION = "valid-negative-excursion"
NOT_AN_EXCURSION = "not-an-excursion"


def rotation_uniqueness_check(x: Excursion, k: int) -> str:
    """Classify the rotation of positive ``x`` at coordinate ``k``.

    The rotated path is the same excursion (k = 0 or theta), the negative
    excursion produced by :func:`vervaat` (k = unique argmax), or not an
    excursion at all; no other outcome exists.
    """
    if not x.is_positive:
        raise ValueError("classification is stated for positive excursions")
    if not 0 <= k <= x.theta:
        raise ValueError("rotation point outside [0, theta]")
    if k in (0, x.theta):
        return SAME_EXCURSION
    rotated = x.jumps[k:] + x.jumps[:k]
    try:
        image = Excursion(rotated)
    except NotAnExcursion:
        return NOT_AN_EXCURSION
    return VALID_NEGATIVE_EXCURSION if not image.is_positive else NOT_AN_EXCURSION


def _identity(x: Excursion) -> Excursion:
    return x


def group_elements() -> dict[str, object]:
    """The eight composite maps generated by -, R and V on unique-max paths.

    Keys name the composite applied right to left; e.g. ``"-V"`` negates
    after rotating.
    """
    return {
        "id": _identity,
        "-": negate,
        "R": reverse,
        "V": vervaat,
        "-R": lambda x: negate(reverse(x)),
        "-V": lambda x: negate(vervaat(x)),
        "VR": lambda x: vervaat(reverse(x)),
        "-VR": lambda x: negate(vervaat(reverse(x))),
    }


def group_table(witnesses) -> dict[tuple[str, str], str]:
    """Multiplication table of the eight-element group, verified pointwise.

    ``witnesses`` is an iterable of unique-maximum excursions used to
    identify composites; it must be rich enough to separate the eight maps
    (any exhaustive unique-max family up to a fixed length will do).
    Returns {(f, g): name of f after g}; raises if the composites fail to
    close or to stay distinct on the witnesses.
    """
    elements = group_elements()
    witnesses = list(witnesses)
    if not witnesses:
        raise ValueError("need at least one witness excursion")

    def fingerprint(fn):
        return tuple(fn(x) for x in witnesses)

    prints = {name: fingerprint(fn) for name, fn in elements.items()}
    if len(set(prints.values())) != len(prints):
        raise AssertionError("witness set does not separate the eight maps")
    lookup = {v: k for k, v in prints.items()}
    table = {}
    for f_name, f in elements.items():
        for g_name, g in elements.items():
            combined = tuple(f(g(x)) for x in witnesses)
            if combined not in lookup:
                raise AssertionError(
                    f"composite {f_name} after {g_name} leaves the group"
                )
            table[(f_name, g_name)] = lookup[combined]
    return table
