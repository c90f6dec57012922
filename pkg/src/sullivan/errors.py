"""Exception hierarchy shared by every layer of the package."""


class SullivanError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(SullivanError):
    """Operands live over different generator sets, or a model is malformed."""


class DegreeError(SullivanError):
    """An element has the wrong (co)degree or is not homogeneous."""


class PreconditionError(SullivanError):
    """An operation was called outside its documented domain.

    ``witness`` names the generator (or element) responsible, when there is one.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ShapeError(PreconditionError):
    """A differential does not have the shape a rewrite move requires."""


class RangeError(SullivanError):
    """A codegree lies outside a computed window."""


class InconclusiveError(SullivanError):
    """A truncated computation cannot decide the question asked of it."""


class ValidationError(SullivanError):
    """A Sullivan algebra failed validation; ``report`` holds the details."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ParseError(SullivanError):
    """Lexical, syntactic or semantic error in a model file."""

    def __init__(self, message, line=None, column=None, witness=None):
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(loc + message)
        self.line = line
        self.column = column
        self.witness = witness
