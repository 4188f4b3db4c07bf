"""Exception types shared across the package."""


class AcycMatchError(Exception):
    """Base class for all errors raised by acycmatch."""


class StructuralError(AcycMatchError, ValueError):
    """Malformed object: wrong arity, unreduced residues, bad permutation."""


class ArgumentError(AcycMatchError, ValueError):
    """An argument is outside the documented domain of the operation."""


class DomainError(AcycMatchError, ArithmeticError):
    """Arithmetic that is undefined, e.g. inverting zero."""


class ResourceError(AcycMatchError, RuntimeError):
    """The requested enumeration exceeds the supported scale."""


class PreconditionError(AcycMatchError, ValueError):
    """A mathematical hypothesis of the operation does not hold.

    ``reason`` carries a short machine-readable tag such as ``"NoCarrier"``.
    """

    def __init__(self, reason: str, message: str = ""):
        self.reason = reason
        super().__init__(f"{reason}: {message}" if message else reason)
