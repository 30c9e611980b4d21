"""Exception hierarchy shared by every module."""

from __future__ import annotations


class TcxError(Exception):
    """Base class for all errors raised by tcx."""


class EmptyInput(TcxError, ValueError):
    pass


class UnknownVertex(TcxError, KeyError):
    pass


class NotAFacet(TcxError, ValueError):
    pass


class NotAFace(TcxError, ValueError):
    pass


class NotSimplicial(TcxError, ValueError):
    pass


class DomainMismatch(TcxError, ValueError):
    pass


class SizeLimitExceeded(TcxError, ValueError):
    def __init__(self, what: str, vertices: int, facets: int | None = None):
        self.vertices = vertices
        self.facets = facets
        detail = f"{vertices} vertices"
        if facets is not None:
            detail += f", {facets} facets"
        super().__init__(f"{what} exceeds the size limit ({detail})")


class IndexOutOfRange(TcxError, IndexError):
    pass


class NotAPower(TcxError, ValueError):
    pass


class TooLarge(TcxError, RuntimeError):
    pass


class PreconditionViolated(TcxError, ValueError):
    pass


class InconsistencyError(TcxError, AssertionError):
    """Two exact results contradict a proven inequality; always an implementation bug."""


class ParseError(TcxError, ValueError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
