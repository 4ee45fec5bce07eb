"""
Exception hierarchy for the dual logarithmic derivative engine.

Library modules raise these; only the CLI layer (orchestrator.py) turns
them into a command status and an exit code.
"""

from typing import Iterable, Optional


class DLDError(ValueError):
    """Base class for every user-facing engine error."""


class ParseError(DLDError):
    """Syntax error in an expression, positioned at a byte offset."""

    def __init__(self, message: str, offset: int, expected: Optional[Iterable[str]] = None):
        self.offset = offset
        self.expected = tuple(sorted(set(expected or ())))
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class DomainError(DLDError):
    """The requested operation is undefined for this input."""


class ZeroFunction(DomainError):
    def __init__(self, message: str = "operator undefined on the zero function"):
        super().__init__(message)


class NotRepresentable(DomainError):
    """Result leaves the ring of fractions over x^q * ln(x)^k monomials."""


class InvalidParameter(DomainError):
    pass


class ZeroArgument(DomainError):
    def __init__(self):
        super().__init__("cannot evaluate at x = 0")


class PoleAt(DomainError):
    def __init__(self, x: complex, magnitude: float):
        self.x = x
        self.magnitude = magnitude
        super().__init__(f"pole at x = {x!r}: |denominator| = {magnitude:.3e} below pole guard")


class NearZeroFunctionValue(DomainError):
    def __init__(self, x: complex, magnitude: float):
        self.x = x
        self.magnitude = magnitude
        super().__init__(f"|f(x)| = {magnitude:.3e} below pole guard at x = {x!r}")


class VerificationFailure(DLDError):
    """Numeric cross-check could not confirm a symbolic result."""


class InsufficientPoints(VerificationFailure):
    def __init__(self, used: int, required: int):
        self.used = used
        self.required = required
        super().__init__(
            f"only {used} sample points survived the pole guard, {required} required"
        )


class InternalInconsistency(RuntimeError):
    """
    A classifier extraction contradicted the period-2 or fixed-point
    classification. Never caught below the CLI layer.
    """
