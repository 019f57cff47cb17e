"""Exception hierarchy shared by every module."""


class XGraphError(Exception):
    """Base class for all errors raised by xgraph."""


class GraphFormatError(XGraphError, ValueError):
    """Malformed graph document or invariant violation at construction."""


class InputError(XGraphError, ValueError):
    """An argument does not satisfy an operation's precondition on its shape."""


class UnsupportedError(XGraphError):
    """The request is outside a documented size limit."""


class MatchingCapExceeded(XGraphError, RuntimeError):
    def __init__(self, cap):
        super().__init__(f"perfect matching cap exceeded ({cap} matchings)")
        self.cap = cap


class PreconditionError(XGraphError):
    """Raised when an operation needs a valid (or non-vacuous) graph.

    The offending ``Verdict`` is attached when one was computed.
    """

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class MonoedgePropertyError(PreconditionError):
    """Some vertex lacks a monochromatic edge of a feasible colour."""


class LemmaViolation(XGraphError, AssertionError):
    """A runtime check of a structural claim failed.

    This is never expected; it carries the graph that triggered it so the
    case can be serialized and inspected.
    """

    def __init__(self, message, graph=None):
        super().__init__(message)
        self.graph = graph
