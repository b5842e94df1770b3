"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """Graph input text could not be decoded."""


class IsolatedVertexError(ValueError):
    """An operation requires every vertex to have positive degree."""


class DisconnectedGraphError(ValueError):
    """An operation requires a connected graph."""


class ConvergenceError(RuntimeError):
    """The eigensolver did not converge within its sweep cap."""


class PreconditionError(ValueError):
    """A check was applied to a graph outside its domain."""
