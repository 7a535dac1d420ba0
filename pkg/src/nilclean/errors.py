"""Exception hierarchy shared by every module."""

from __future__ import annotations


class RingError(Exception):
    """Base class for all errors raised by this package."""


class InvalidSpec(RingError):
    """A ring description with a zero modulus or zero matrix size."""

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message)
        self.offset = offset


class SpecSyntaxError(RingError):
    """Malformed ring-description text; ``offset`` indexes into the input."""

    def __init__(self, message: str, offset: int, expected: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.expected = expected


class OrderCapExceeded(RingError):
    pass


class RingMismatch(RingError):
    pass


class NotAnIdeal(RingError):
    pass


class PreconditionViolated(RingError):
    pass
