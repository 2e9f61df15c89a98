"""Exception hierarchy shared by the library and the command line front-end."""


class MealycatError(Exception):
    """Base class for every error raised on purpose by this package."""


class MalformedInput(MealycatError, ValueError):
    """Data that cannot describe the requested object (partial table, foreign letter...)."""


class TypeMismatch(MealycatError, TypeError):
    """Two objects whose interfaces do not line up (alphabets, carriers, categories)."""


class UsageError(MealycatError, ValueError):
    pass


class PreconditionError(MealycatError, ValueError):
    pass


class ResourceLimit(MealycatError, RuntimeError):
    """An enumeration would exceed its configured bound."""


class DocumentError(MealycatError):
    """Anything that goes wrong while reading a document."""


class DocumentSyntaxError(DocumentError):
    def __init__(self, message, line=1, column=1, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")


class UnresolvedReference(DocumentError):
    pass


class InvariantViolation(DocumentError):
    """The document parsed, but the object it describes breaks a law it must satisfy."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)
