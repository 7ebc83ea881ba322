"""Exception hierarchy.

Every error raised by the library derives from :class:`DesignationError`, a
``ValueError``, so callers can catch one type.  The class names mirror the
rule that was violated so CLI messages can name it directly.
"""


class DesignationError(ValueError):
    """Base class for all validation failures."""


class InvalidFactor(DesignationError):
    pass


class InvalidSchema(DesignationError):
    pass


class PositionNotNext(DesignationError):
    pass


class DuplicateName(DesignationError):
    pass


class UnknownPosition(DesignationError):
    pass


class OutOfRange(DesignationError):
    pass


class IncompleteChoices(DesignationError):
    pass


class DuplicatePosition(DesignationError):
    pass


class BadLength(DesignationError):
    pass


class BadChar(DesignationError):
    pass


class UnrecognizedSyntax(DesignationError):
    pass


class ConflictingConstraint(DesignationError):
    pass


class StyleMismatch(DesignationError):
    pass


class SchemaMismatch(DesignationError):
    pass


class DuplicateId(DesignationError):
    pass


class InvalidRationaleKey(DesignationError):
    pass


class NotAnExtension(DesignationError):
    pass


class MalformedDocument(DesignationError):
    pass


class IoFailure(DesignationError):
    """Reading or writing a file failed at the OS level."""
