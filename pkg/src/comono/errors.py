"""Exception types shared across the package."""


class ComonoError(Exception):
    """Base class for all package-specific errors."""


class FieldMismatchError(ComonoError):
    """Scalars or matrices from different fields were combined."""


class ShapeError(ComonoError):
    """Matrix shapes or ambient dimensions do not line up."""


class CoalgebraMismatchError(ComonoError):
    """An operation received objects defined over different coalgebras."""


class NotComoduleMapError(ComonoError):
    """A claimed comodule morphism fails the coaction intertwining law."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotAlgebraMapError(ComonoError):
    """A claimed algebra morphism fails the multiplicativity or unit law."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotCoidealError(ComonoError):
    """A subspace handed to the quotient construction is not a coideal."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class InternalConsistencyError(ComonoError):
    """A step that is guaranteed by theory failed; the input data is corrupt."""


class TheoremViolationError(ComonoError):
    """Provably equivalent checks disagreed; indicates an implementation bug."""

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class ParseError(ComonoError):
    """A definition document could not be parsed."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column
