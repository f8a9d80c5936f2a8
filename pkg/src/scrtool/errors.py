"""Exception types raised across the package."""


class ScrError(Exception):
    """Base class for all library errors."""


class NonSquareError(ScrError, ValueError):
    pass


class SingularMatrixError(ScrError, ValueError):
    pass


class RankDeficientError(ScrError, ValueError):
    pass


class NonPrimitiveError(ScrError, ValueError):
    pass


class NotPointedError(ScrError, ValueError):
    pass


class NotFullRankError(ScrError, ValueError):
    pass


class EmptyPolyhedronError(ScrError, ValueError):
    pass


class EmptyHullError(ScrError, ValueError):
    """The polyhedron contains no integer point."""


class UnboundedNoBoxError(ScrError, ValueError):
    pass


class UnboundedComponentError(ScrError, ValueError):
    pass


class CapExceededError(ScrError, RuntimeError):
    """An enumeration cap was hit; ``partial`` carries whatever was computed."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class GraphParseError(ScrError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class TooLargeError(ScrError, ValueError):
    pass


class NotFoundError(ScrError, LookupError):
    pass


class UnknownSuiteError(ScrError, KeyError):
    pass
