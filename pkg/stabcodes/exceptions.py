"""
Error hierarchy for stabcodes.

Every error raised by the services derives from StabCodeError; the
management commands turn them into CommandError with exit status 1.
"""


class StabCodeError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(StabCodeError, ValueError):
    pass


class OwnerMismatch(StabCodeError, ValueError):
    """Elements or submodules that live on different carriers."""


class ZeroDeterminant(StabCodeError, ValueError):
    pass


class NonUnitMonomialFactor(StabCodeError, ValueError):
    pass


class CountMismatch(StabCodeError):
    pass


class IllDefined(StabCodeError, ValueError):
    pass


class NotHermitian(StabCodeError, ValueError):
    pass


class DegenerateForm(StabCodeError, ValueError):
    pass


class NotPerfectSquare(StabCodeError):
    pass


class NotIsotropic(StabCodeError, ValueError):
    pass


class NotLagrangian(StabCodeError, ValueError):
    pass


class NotSublagrangian(StabCodeError, ValueError):
    pass


class LagrangianMismatch(StabCodeError, ValueError):
    pass


class SideConditionFailed(StabCodeError):
    def __init__(self, conditions):
        self.conditions = list(conditions)
        super().__init__("Side condition failed: " + "; ".join(self.conditions))


class InconsistentCertificate(StabCodeError):
    pass


class NonCommutingTerms(StabCodeError):
    def __init__(self, first, second, phase):
        self.first = first
        self.second = second
        self.phase = phase
        super().__init__(f"Terms {first} and {second} do not commute (phase {phase})")


class ResourceLimitExceeded(StabCodeError):
    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what} of size {size} exceeds the configured cap {cap}")


class DocumentError(StabCodeError, ValueError):
    """Syntax or semantic error in a code document, with a 1-based position."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class NumericalFailure(StabCodeError):
    """A floating point cross-check disagreed beyond tolerance."""
