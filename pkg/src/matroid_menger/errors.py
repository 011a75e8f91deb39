"""Exception hierarchy shared by every engine."""

from __future__ import annotations


class MatroidMengerError(Exception):
    """Base class for all errors raised by this package."""


class InvalidCutError(MatroidMengerError, ValueError):
    """A vertex set is not a t-s cut (it must contain t and avoid s)."""


class GroundSetError(MatroidMengerError, ValueError):
    """A set passed to a matroid oracle is not contained in its ground set."""


class DependentSetError(MatroidMengerError, ValueError):
    """An operation that needs an independent set received a dependent one."""


class MalformedAugmentationError(MatroidMengerError):
    """An edge set could not be decomposed into the required s->t paths."""


class InternalInvariantError(MatroidMengerError, AssertionError):
    """A certified postcondition failed. Always a bug, never bad input."""


class NotMaximalError(MatroidMengerError):
    """A wave handed to an operation requiring maximality has a proper extension."""


class GuardExceeded(MatroidMengerError):
    """An exhaustive routine refused an instance larger than its guard."""


class InstanceError(MatroidMengerError, ValueError):
    """A serialized document failed validation."""

    def __init__(self, message: str, location: str = "$"):
        super().__init__(f"{location}: {message}")
        self.message = message
        self.location = location


class UnsupportedMatroidError(MatroidMengerError, ValueError):
    """A routine that only understands certain matroid families met another one."""
