"""Exception hierarchy.

Every error carries a ``kind`` string (the class name) so the command line
front end can emit it as a machine-readable field.
"""


class SpreadError(Exception):
    """Base class for all errors raised by this package."""

    @property
    def kind(self) -> str:
        return type(self).__name__


class GraphFormatError(SpreadError, ValueError):
    pass


class UnknownVertex(SpreadError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class EmptyMergeSet(SpreadError, ValueError):
    pass


class NotSuperset(SpreadError, ValueError):
    pass


class StateSpaceExceeded(SpreadError):
    pass


class UnreachableTarget(SpreadError):
    pass


class DivergentDiagonal(SpreadError, ArithmeticError):
    pass


class NonUniformProbabilities(SpreadError, ValueError):
    pass


class DegreeMismatch(SpreadError, ValueError):
    pass


class OrderViolation(SpreadError, ValueError):
    pass


class NonMonotoneCDF(SpreadError, ValueError):
    pass


class DomainError(SpreadError, ValueError):
    pass


class NotATree(SpreadError, ValueError):
    pass


class TooManyEdges(SpreadError):
    pass


class UsageError(SpreadError):
    pass
