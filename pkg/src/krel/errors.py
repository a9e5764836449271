"""Exception hierarchy.

Every error raised deliberately by the library derives from :class:`KrelError`
and carries a JSON-friendly ``payload`` so the command line can report it.
"""
from __future__ import annotations

__all__ = [
    "KrelError",
    "ParseError",
    "InvariantViolation",
    "DimensionMismatch",
    "AmbientMismatch",
    "NotHermitian",
    "DegenerateForm",
    "NotHilbert",
    "SpaceMismatch",
    "NotDisjoint",
    "GreenIdentityViolation",
    "SymmetryRequired",
    "UnbalancedSignature",
    "NoRationalFrame",
    "GenerationExhausted",
    "EmptyRegularSet",
    "NonOperatorWeylValue",
    "PreconditionUnmet",
    "UnknownSuite",
    "ModeError",
    "InconsistentRoutes",
]


class KrelError(Exception):
    """Base class for library errors."""

    code = "error"

    def __init__(self, message: str, **payload):
        super().__init__(message)
        self.payload = payload

    def to_json(self) -> dict:
        return {"error": type(self).__name__, "message": str(self), **self.payload}


class ParseError(KrelError, ValueError):
    """Malformed scalar, matrix or document."""


class InvariantViolation(KrelError, ValueError):
    """A value does not satisfy the invariants of its type."""


class DimensionMismatch(InvariantViolation):
    pass


class AmbientMismatch(InvariantViolation):
    pass


class NotHermitian(InvariantViolation):
    pass


class DegenerateForm(InvariantViolation):
    pass


class NotHilbert(InvariantViolation):
    """A space required to be positive definite is not."""


class SpaceMismatch(InvariantViolation):
    pass


class NotDisjoint(InvariantViolation):
    """Disjoint sum requested for relations whose graphs intersect."""


class GreenIdentityViolation(InvariantViolation):
    """Green's identity fails on a pair of graph basis vectors."""


class SymmetryRequired(InvariantViolation):
    """The inverse main transformation needs a symmetric relation."""


class UnbalancedSignature(KrelError, ValueError):
    """Hyper-maximal neutral subspaces need equal positive and negative index."""


class NoRationalFrame(KrelError, ValueError):
    """No Gaussian-rational basis diagonalizing the form to +-1 was found."""


class GenerationExhausted(KrelError, RuntimeError):
    pass


class EmptyRegularSet(KrelError, ValueError):
    """None of the supplied points is of regular type for S."""


class NonOperatorWeylValue(KrelError, ValueError):
    """The Weyl family is not an everywhere defined operator at a point."""


class PreconditionUnmet(KrelError, ValueError):
    pass


class UnknownSuite(KrelError, KeyError):
    def __str__(self):
        return self.args[0]


class ModeError(KrelError, ValueError):
    """Operation unavailable in the current arithmetic mode."""


class InconsistentRoutes(KrelError, AssertionError):
    """Two independent computations of the same object disagree."""
