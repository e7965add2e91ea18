"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the command line
front end can print a single line and exit with the right status.
"""


class QojetsError(Exception):
    code = "Error"

    def __init__(self, message=""):
        super().__init__(message)
        self.message = message

    def line(self):
        return f"{self.code}: {self.message}" if self.message else self.code


class InvalidSurface(QojetsError):
    code = "InvalidSurface"


class SchemaError(InvalidSurface):
    code = "SchemaError"


class NonRational(InvalidSurface):
    code = "NonRational"


class NotIncreasing(InvalidSurface):
    code = "NotIncreasing"


class InLattice(InvalidSurface):
    code = "InLattice"


class NotNormalized(InvalidSurface):
    code = "NotNormalized"


class LexOrderViolated(InvalidSurface):
    code = "LexOrderViolated"


class ReductionFailed(QojetsError):
    code = "ReductionFailed"


class EmptyComponent(QojetsError):
    code = "EmptyComponent"


class Inconclusive(QojetsError):
    code = "Inconclusive"


class GraphTooShallow(QojetsError):
    code = "GraphTooShallow"


class VariantMismatch(QojetsError):
    code = "VariantMismatch"


class SolveFailed(QojetsError):
    code = "SolveFailed"
