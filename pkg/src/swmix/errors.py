"""Exception hierarchy shared by every swmix module."""

from __future__ import annotations


class SwmixError(Exception):
    """Base class for all swmix-specific failures."""


class UndefinedAtPoint(SwmixError):
    """A point orbit stepped outside the domain of every piece of a map."""


class UndefinedOnSet(SwmixError):
    """A positive-width part of a set left all piece domains mid-composition."""


class EmptyLanguage(SwmixError):
    """The switching constraint admits no infinite sequence at all."""


class OutsidePartition(SwmixError):
    """An iterate fell outside every itinerary partition cell."""


class BudgetExceeded(SwmixError):
    """A search ran out of budget before finishing.

    Operations that can return a meaningful partial result attach it as
    ``partial``; the others raise with ``partial=None``.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class InadmissiblePair(SwmixError):
    """A certificate pair (U, V) misses the carrier sets it must meet."""


class InadmissibleSeeds(SwmixError):
    """A spread seed set does not intersect the carrier set K."""


class PreconditionFailed(SwmixError):
    """An operation's stated precondition does not hold for the inputs."""


class EmptyRefinement(SwmixError):
    """A refinement step produced an empty set (outward rounding artifact)."""


class NotCovered(SwmixError):
    """A point is not strictly inside any certified ball of a chain stage."""


class ScenarioError(SwmixError):
    """A scenario or certificate document failed validation."""
