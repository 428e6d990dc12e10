"""Exception hierarchy shared by every module.

All errors derive from :class:`GraphconsError` so the CLI can catch one type
and turn it into a one-line diagnostic with a nonzero exit code.
"""


class GraphconsError(Exception):
    """Base class for all toolkit errors."""


class InvalidArgument(GraphconsError, ValueError):
    pass


class ConstructionFailed(GraphconsError, RuntimeError):
    pass


class UnsupportedSize(InvalidArgument):
    pass


class Unsupported(GraphconsError, ValueError):
    pass


class AsymmetryError(InvalidArgument):
    pass


class DisconnectedGraph(GraphconsError, ValueError):
    pass


class IsolatedVertex(GraphconsError, ValueError):
    pass


class BipartiteGraph(GraphconsError, ValueError):
    """The plain averaging iteration oscillates on bipartite graphs."""


class BracketError(GraphconsError, ValueError):
    pass


class RootFindingError(GraphconsError, ArithmeticError):
    """Raised mid-iteration; carries the partial report built so far."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NumericError(RootFindingError):
    pass


class DegenerateSecant(RootFindingError):
    pass


class DerivativeSingularity(RootFindingError):
    pass
