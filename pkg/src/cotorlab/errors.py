"""Exception hierarchy shared by all cotorlab modules."""


class CotorlabError(Exception):
    """Base class; the CLI maps these to exit code 2."""


class CycleError(CotorlabError):
    pass


class UnknownLabel(CotorlabError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class SizeCapExceeded(CotorlabError):
    pass


class NotOrderedQuiver(CotorlabError):
    pass


class QDegenerate(CotorlabError, ZeroDivisionError):
    pass


class KindMismatch(CotorlabError):
    pass


class BoundMismatch(CotorlabError):
    pass


class QMismatch(CotorlabError):
    pass


class NotInvertible(CotorlabError, ZeroDivisionError):
    pass


class ParentMismatch(CotorlabError):
    pass


class UnknownType(CotorlabError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NotCompatible(CotorlabError):
    pass


class VerificationFailed(CotorlabError, AssertionError):
    """A structure failed an algebraic law it was supposed to satisfy."""


class NotAComplex(CotorlabError):
    pass


class NoGrouplike(CotorlabError):
    pass


class CapTooSmall(CotorlabError):
    pass


class DegreeOverflow(CotorlabError):
    pass


class BudgetExceeded(CotorlabError):
    pass


class NotIncidenceForm(CotorlabError):
    pass


class UnknownVertex(CotorlabError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class CoefficientNotAlgebra(CotorlabError):
    pass


class ParseError(CotorlabError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
