"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "ExcursionKitError",
    "NotAnExcursion",
    "MalformedSequence",
    "OutOfDomain",
    "LevelNumbersMismatch",
    "InvalidDecomposition",
    "BoundExceeded",
]


class ExcursionKitError(Exception):
    """Base class for domain errors raised by this package."""


class NotAnExcursion(ExcursionKitError):
    """A jump or value sequence fails the excursion contract.

    ``reason`` is one of ``"interior-zero"``, ``"nonzero-endpoint"`` or
    ``"mixed-sign"``.
    """

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        msg = reason if not detail else f"{reason}: {detail}"
        super().__init__(msg)


class MalformedSequence(ExcursionKitError):
    """An index sequence is not a valid double-occurrence encoding."""


class OutOfDomain(ExcursionKitError):
    """A partially defined transformation was applied outside its domain.

    ``condition`` names the violated requirement; ``stage`` is set when the
    failure occurs inside a composition.
    """

    def __init__(self, condition: str, stage: int | None = None):
        self.condition = condition
        self.stage = stage
        msg = condition if stage is None else f"stage {stage}: {condition}"
        super().__init__(msg)


class LevelNumbersMismatch(ExcursionKitError):
    """Two excursions do not share the same level numbers."""


class InvalidDecomposition(ExcursionKitError):
    """A per-level child-count tuple does not match the level numbers."""


class BoundExceeded(ExcursionKitError):
    """A brute-force generator was asked to exceed its practical bound."""
