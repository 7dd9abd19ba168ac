"""Exception types raised across the package.

Errors that signal a violated mathematical precondition derive from
:class:`PreconditionError`; the CLI maps those to exit code 2.
"""


class RecessError(Exception):
    """Base class for all package errors."""


class PreconditionError(RecessError, ValueError):
    """An input does not satisfy the mathematical precondition of an operation."""


class ZeroVector(PreconditionError):
    pass


class NonFinite(PreconditionError):
    pass


class DimMismatch(PreconditionError):
    pass


class DimensionCap(PreconditionError):
    pass


class Degenerate(PreconditionError):
    pass


class NotProper(PreconditionError):
    pass


class NotIrreducible(PreconditionError):
    pass


class NotCylinder(PreconditionError):
    pass


class NotInKPlus(PreconditionError):
    pass


class ApexNotAtOrigin(PreconditionError):
    pass


class Unbounded(PreconditionError):
    pass


class UnboundedInput(PreconditionError):
    pass


class Unsupported(PreconditionError):
    pass


class NoConverge(RecessError, RuntimeError):
    pass


class EmptyPoints(RecessError, ValueError):
    pass


class ParseError(RecessError, ValueError):
    pass
