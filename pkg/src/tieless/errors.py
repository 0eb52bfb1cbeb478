"""Exception hierarchy.

Everything raised deliberately by the package derives from :class:`TielessError`,
so callers (the CLI in particular) can separate bad input from programming errors.
"""

from __future__ import annotations


class TielessError(Exception):
    """Base class for all package errors."""


class InputError(TielessError, ValueError):
    """A file or argument could not be parsed into the expected shape."""


class InvalidMeasurements(InputError):
    """Empty measurement vector, non-finite value, or duplicate object id."""


class InvalidLimits(InputError):
    """Quantile limits outside [0, 100] or not strictly increasing."""


class InvalidRelation(TielessError):
    """The better-than relation is not a strict partial order."""


class TransitivityViolation(InvalidRelation):
    pass


class CycleDetected(InvalidRelation):
    pass


class MixedComponentDirection(InvalidRelation):
    """Cross pairs between two incomparability components point both ways."""


class TooLarge(TielessError):
    """Brute-force enumeration requested beyond its size bound."""


class MissingSequence(InputError):
    """A variant in the colour split has no activity sequence."""
