"""Exception types shared across the package."""


class TapError(Exception):
    """Base class for every error raised by treeaug."""


class ParseError(TapError, ValueError):
    """Malformed instance or solution text.

    ``line`` is the 1-based line number of the offending input line, or
    ``None`` when the problem is only detectable at end of input.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InfeasibleError(TapError):
    """Some tree edge lies on no link path, so no cover exists."""


class InvariantError(TapError, AssertionError):
    """An internal guarantee of the algorithm was violated."""


class LimitExceeded(TapError):
    """An exhaustive oracle was asked to enumerate beyond its size limit."""


def check(condition, message):
    """Raise :class:`InvariantError` unless ``condition`` holds.

    Used instead of ``assert`` so the checks survive ``python -O``.
    """
    if not condition:
        raise InvariantError(message)
