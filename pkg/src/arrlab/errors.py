"""Exception hierarchy shared by every arrlab module."""


class ArrlabError(Exception):
    """Base class for all errors raised by arrlab."""


class FieldMismatchError(ArrlabError, TypeError):
    """Two exact scalars (or objects built on them) live in different fields."""


class ParseError(ArrlabError, ValueError):
    """Malformed scalar, arrangement file or points file."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ParameterError(ArrlabError, ValueError):
    """A constructor or operation received parameters outside its range."""


class GenericityError(ArrlabError):
    """A family constructor produced a lattice other than the one it promises."""


class NotApplicableError(ArrlabError):
    """The operation does not apply to the given arrangement class."""


class PencilError(NotApplicableError):
    """All lines pass through one point, so mdr(f) = 0."""


class CollinearError(ArrlabError, ValueError):
    """All points of a configuration lie on one line."""


class ConsistencyError(ArrlabError):
    """An internal cross-check failed. This signals a bug or a theorem violation."""
