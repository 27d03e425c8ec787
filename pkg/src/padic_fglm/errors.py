"""Exception types shared across the package."""


class PadicError(Exception):
    """Base class for all domain errors raised by this package."""


class DimensionMismatch(PadicError):
    """Operands have incompatible shapes or variable counts."""


class RankNotCertified(PadicError):
    """A full-rank certificate was required but some invariant factor is
    indistinguishable from zero at the available precision."""


class InsufficientPrecision(PadicError):
    """The input precision was too low for the requested computation to be
    certified."""


class MembershipViolated(PadicError):
    """A vector assumed to lie in the image of a matrix has a significant
    coordinate outside it (or the precision is too low to tell)."""


class NotZeroDimensional(PadicError):
    """The leading-monomial set does not cut out a finite staircase."""


class NotSemiStable(PadicError):
    """The leading-monomial set is not semi-stable for the last variable."""


class NotShapePosition(PadicError):
    """A basis expected in shape position does not have that form."""


class DegreeBlowup(PadicError):
    """Intermediate degrees exceeded the configured cutoff."""


class InvalidPrime(PadicError):
    """The proposed uniformizer is not a (probable) prime."""


class ParseError(PadicError):
    """Malformed input text; carries a position when available."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", col {column}" if column is not None else "")
            message = f"{message} ({where})"
        super().__init__(message)


class UnknownVariable(ParseError):
    """A polynomial mentions a variable that was never declared."""
