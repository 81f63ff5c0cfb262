"""Exception taxonomy shared by every module.

Each error carries a machine-readable ``code`` (the class name) used by the
command line interface, which maps ``exit_code`` as: parse failures -> 1,
domain errors -> 2, resource limits -> 3.
"""

from __future__ import annotations

__all__ = [
    "CremlineError",
    "ParseError",
    "ResourceLimit",
    "InvalidMap",
    "IsAPoint",
    "NotOnCenter",
    "DegenerateFrame",
    "DegenerateLine",
    "SamplingExhausted",
    "CollinearBasePoints",
    "PreconditionViolated",
    "NotDecontracted",
    "NotJonquieres",
    "NotInDecL",
    "NotInAL",
    "InternalInconsistency",
]


class CremlineError(Exception):
    """Base class for all library errors."""

    exit_code = 2

    @property
    def code(self) -> str:
        return type(self).__name__


class ParseError(CremlineError):
    """Malformed JSON input or a value violating the serialization schema."""

    exit_code = 1


class ResourceLimit(CremlineError):
    """A configured degree/bit-size/iteration cap was exceeded."""

    exit_code = 3


class InvalidMap(CremlineError):
    """A component triple that does not define a rational map (e.g. all zero,
    inhomogeneous, or mismatched degrees)."""


class IsAPoint(CremlineError):
    """A parametrized curve degenerated to a single point where a genuine
    curve was required."""


class NotOnCenter(CremlineError):
    """A curve does not pass through the blowup centre it was to be lifted
    over."""


class DegenerateFrame(CremlineError):
    """Four points with three collinear cannot define a projective frame."""


class DegenerateLine(CremlineError):
    """A line whose coefficient triple is identically zero."""


class SamplingExhausted(CremlineError):
    """The certified random search exceeded its retry budget."""


class CollinearBasePoints(CremlineError):
    """Three points that must span the plane are collinear, so no quadratic
    map with those base points exists."""


class PreconditionViolated(CremlineError):
    """An operation was called on input outside its documented domain."""


class NotDecontracted(CremlineError):
    """A word that still moves the distinguished line onto a contracted curve
    was passed to a stage that requires decontracted input."""


class NotJonquieres(CremlineError):
    """A map that does not preserve the pencil of lines through the
    distinguished pencil centre."""


class NotInDecL(CremlineError):
    """A map whose composite does not preserve the distinguished line."""


class NotInAL(CremlineError):
    """A linear map outside the stabilizer of the distinguished line."""


class InternalInconsistency(CremlineError):
    """An internal certified check failed; indicates a bug, not bad input."""
