"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class TCBoundsError(Exception):
    """Base class for all errors raised by tcbounds."""


# algebra construction and arithmetic

class NonHomogeneousRelation(TCBoundsError, ValueError):
    pass


class InfiniteDimensional(TCBoundsError, ValueError):
    pass


class MixedAmbient(TCBoundsError, ValueError):
    pass


class FieldMismatch(TCBoundsError, ValueError):
    pass


class NoSteenrodData(TCBoundsError, ValueError):
    pass


class PresentationError(TCBoundsError, ValueError):
    """Malformed presentation (bad exponent vectors, duplicate names, ...)."""


# ring constructors

class BadParameter(TCBoundsError, ValueError):
    pass


class BadAlpha(TCBoundsError, ValueError):
    pass


class BadW1(TCBoundsError, ValueError):
    pass


# bound engine

class UnsupportedCombination(TCBoundsError, ValueError):
    pass


class RingUnavailable(TCBoundsError, ValueError):
    pass


class NotInCatalog(TCBoundsError, KeyError):
    pass


class InconsistentBounds(TCBoundsError, AssertionError):
    """A lower bound exceeded an upper bound: some rule is unsound."""


# expression grammar

class ExprSyntaxError(TCBoundsError, ValueError):
    def __init__(self, text: str, position: int, expected: list[str] | tuple[str, ...]):
        self.text = text
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        super().__init__(
            f"syntax error at offset {position}: expected one of {', '.join(self.expected)}"
        )


class ParameterError(TCBoundsError, ValueError):
    pass


class ValidationFailure(TCBoundsError, AssertionError):
    """A constructed ring failed its own dimension or duality self-check."""
