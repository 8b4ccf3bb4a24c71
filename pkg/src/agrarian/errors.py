"""Exception hierarchy shared by all modules."""


class AgrarianError(Exception):
    """Base class for every error raised by the library."""


class DivisionByZero(AgrarianError, ZeroDivisionError):
    pass


class ZeroDenominator(DivisionByZero):
    pass


class FieldMismatch(AgrarianError, TypeError):
    pass


class TwistMismatch(AgrarianError, TypeError):
    pass


class MissingUnit(AgrarianError, KeyError):
    pass


class UnknownGenerator(AgrarianError, KeyError):
    pass


class PresentationSyntaxError(AgrarianError, SyntaxError):
    """Malformed presentation text; carries 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class DuplicateGenerator(PresentationSyntaxError):
    pass


class EmptyGeneratorList(PresentationSyntaxError):
    pass


class ExpressionSyntaxError(AgrarianError, ValueError):
    pass


class ComplexNotChain(AgrarianError, ValueError):
    pass


class NotAChainMap(AgrarianError, ValueError):
    pass


class NotSquare(AgrarianError, ValueError):
    pass


class NotAcyclic(AgrarianError):
    """The complex has a nonzero Betti number; ``report`` says which."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UnbasedComplex(AgrarianError, ValueError):
    pass


class UnsupportedField(AgrarianError, TypeError):
    pass


class BasisIncompatible(AgrarianError, ValueError):
    pass


class EmptyInput(AgrarianError, ValueError):
    pass


class RankTooLargeForFaces(AgrarianError, ValueError):
    pass


class LatticeMismatch(AgrarianError, ValueError):
    pass


class NotAVertex(AgrarianError, ValueError):
    pass


class ZeroElement(AgrarianError, ValueError):
    pass


class ZeroCharacter(AgrarianError, ValueError):
    pass


class WrongDeficiency(AgrarianError, ValueError):
    pass


class NoAdmissibleGenerator(AgrarianError, ValueError):
    pass


class PolytopeMismatch(AgrarianError, ValueError):
    pass


class RelatorNotRespected(AgrarianError, ValueError):
    pass


class Cancelled(AgrarianError):
    """Raised when a cooperative cancellation token fires."""
