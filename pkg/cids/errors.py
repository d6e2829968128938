"""
    errors.py

    Exception hierarchy for cids.

    Every failure caused by *input data* (a malformed corpus line,
    a dangling citation, an unknown researcher) derives from `CidsError`.
    The command line driver maps those to exit status 2; anything
    else is a bug and propagates.
"""


class CidsError(Exception):
    """
    Root of all data errors raised by cids.
    """


class CorpusFormatError(CidsError, ValueError):
    """
    A line of an input file does not conform to its record format.
    Carries the file path and the 1-based line number.
    """

    def __init__(self, message, path=None, line=None):
        self.path = None if path is None else str(path)
        self.line = line
        self.reason = message
        if self.path is not None and line is not None:
            message = f"{self.path}:{line}: {message}"
        elif self.path is not None:
            message = f"{self.path}: {message}"
        super().__init__(message)


class QueryParseError(CorpusFormatError):
    """
    Text in the researcher query language could not be parsed.
    """


class IntegrityError(CidsError, ValueError):
    """
    Loaded records violate a cross-record invariant
    (dangling edge, duplicate id, empty roster, ...).
    """


class UnknownReferenceError(CidsError, LookupError):
    """
    A name or identifier does not resolve.
    """


class EmptyInputError(CidsError, ValueError):
    """
    An operation that needs at least one element received none.
    """
