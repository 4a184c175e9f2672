"""Exception hierarchy shared by every factorlab module."""


class FactorLabError(Exception):
    """Base class for all factorlab errors."""


class PreconditionError(FactorLabError, ValueError):
    """An operation was called on input outside its contract."""


class Graph6Error(FactorLabError, ValueError):
    """A graph6 record could not be decoded.

    ``offset`` is the zero-based byte position that triggered the failure,
    or ``None`` when the record as a whole is wrong (e.g. empty).
    """

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)


class UnsupportedSizeError(FactorLabError, ValueError):
    """Graph order outside the supported single-byte graph6 range."""
