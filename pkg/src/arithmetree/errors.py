"""Exception hierarchy.

Every domain failure raises a subclass of :class:`ArithmetreeError`; text that
cannot be read at all raises :class:`ParseError`.  The CLI maps the first family
to exit status 1 and the second to exit status 2.
"""


class ArithmetreeError(ValueError):
    """Base class for domain errors."""


class ParseError(ArithmetreeError):
    """Malformed text or JSON input."""


class DegreeError(ArithmetreeError):
    """Operands of incompatible or unsupported degree."""


class NotAName(ArithmetreeError):
    """A candidate vector that does not name any tree."""


class UndefinedOperation(ArithmetreeError):
    """An operation the algebra leaves undefined, e.g. (0) ⊣ (0)."""


class NotComparable(ArithmetreeError):
    """Elements that are not ordered as the operation requires."""


class NoSolution(ArithmetreeError):
    """A grove equation without solution."""


class CrossingPartition(ArithmetreeError):
    """Blocks that do not form a noncrossing partition."""
