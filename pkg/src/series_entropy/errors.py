"""Exception hierarchy shared by the library and the command line tool."""


class SeriesError(Exception):
    """Base class for errors raised while computing with series."""


class InvalidWordError(SeriesError, ValueError):
    """A word contains a letter index outside the alphabet, or has bad syntax."""


class AlphabetMismatchError(SeriesError, ValueError):
    pass


class HorizonError(SeriesError):
    """A coefficient was requested beyond the truncation horizon of a series."""


class InsufficientHorizonError(SeriesError):
    """The horizon is too short to certify any degree needed by an estimate."""


class UnsupportedOperationError(SeriesError, NotImplementedError):
    pass


class ExpressionError(ValueError):
    """Malformed series-expression document.

    ``path`` locates the offending node, e.g. ``$.args[1]``.
    """

    def __init__(self, message, path="$"):
        super().__init__(f"{path}: {message}")
        self.path = path
