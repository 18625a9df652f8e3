"""
Exceptions raised by the calculator
"""
from typing import Optional


class RuminError(ValueError):
    """Base class of every domain error"""


class ValidationError(RuminError):
    """Invalid user-supplied parameters"""


class ParseError(RuminError):
    """Syntax error in a structure-constant document"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class FormParseError(RuminError):
    """Syntax error in a form expression"""

    def __init__(self, message: str, text: str = '', position: int = 0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")

    def pointer(self) -> str:
        """The offending expression with a caret under the error position"""
        return f"{self.text}\n{' ' * self.position}^"


class AlgebraValidationError(RuminError):
    """A structure-constant table violates a Carnot algebra axiom"""


class JacobiViolation(AlgebraValidationError):
    pass


class GradingViolation(AlgebraValidationError):
    pass


class GenerationViolation(AlgebraValidationError):
    pass


class NonpositiveLambda(RuminError):
    pass


class DimensionMismatch(RuminError):
    pass


class DegreeOverflow(RuminError):
    pass


class DegreeMismatch(RuminError):
    pass


class NotHeisenberg(RuminError):
    pass


class NotRumin(RuminError):
    pass


class NotClosed(RuminError):
    pass


class NoConvergence(RuminError):
    pass


class BoundTooSmall(RuminError):
    pass


class NoLinearGrowth(RuminError):
    """A left-invariant Rumin form has no primitive with linear coefficients"""

    def __init__(self, message: str, minimal_growth: Optional[int] = None):
        self.minimal_growth = minimal_growth
        super().__init__(message)


class DegenerateShell(RuminError):
    pass


class OrderTooHigh(RuminError):
    pass


class MixedWeight(RuminError):
    pass


class InvariantViolation(RuminError):
    pass


class ProfileDepthExceeded(RuminError):
    pass


USAGE_ERRORS = (ParseError, FormParseError, ValidationError)
