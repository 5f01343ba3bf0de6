"""Exception hierarchy shared by every layer of the package."""


class MDegreeError(Exception):
    """Base class for all package errors."""


# scalar fields

class FieldError(MDegreeError, ValueError):
    pass


class CharTwo(FieldError):
    def __init__(self):
        super().__init__("characteristic 2 is not supported")


class NotPrime(FieldError):
    def __init__(self, p):
        self.p = p
        super().__init__(f"{p} is not prime")


class DivideByZero(MDegreeError, ZeroDivisionError):
    pass


class ZeroInput(MDegreeError, ValueError):
    pass


# polynomials and parsing

class ExpressionSyntaxError(MDegreeError, ValueError):
    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}")


class UnknownVariable(ExpressionSyntaxError):
    def __init__(self, name, text="", pos=0):
        self.name = name
        super().__init__(f"unknown variable {name!r}", text, pos)


class DivisionInExpression(ExpressionSyntaxError):
    def __init__(self, text="", pos=0):
        super().__init__("division is only allowed in rational literals over Q", text, pos)


class MixedContext(MDegreeError, ValueError):
    pass


class IndexOutOfRange(MDegreeError, IndexError):
    pass


class ZeroPolynomial(MDegreeError, ValueError):
    pass


class DegreeOverflow(MDegreeError, OverflowError):
    pass


# ideals

class PowerNotFound(MDegreeError, LookupError):
    pass


# endomorphisms

class NotPuncturedEndo(MDegreeError):
    """The candidate map has a zero away from the origin."""

    def __init__(self, index, witness):
        self.index = index
        self.witness = witness
        super().__init__(
            f"not an endomorphism of punctured affine space: "
            f"{witness} is not in the radical of the ideal of the map"
        )


class ShapeError(MDegreeError, ValueError):
    pass


class UnimodularInput(MDegreeError):
    pass


class InfiniteQuotient(MDegreeError):
    pass


class NotUnimodular(MDegreeError):
    pass


# EKL forms

class InternalDivisionFailure(MDegreeError, ArithmeticError):
    pass


class DegenerateForm(MDegreeError, ValueError):
    pass


# GW classification

class FieldMismatch(MDegreeError, ValueError):
    pass


class FieldTooLarge(MDegreeError, ValueError):
    pass


class RankTooLarge(MDegreeError, ValueError):
    pass


class InvariantViolation(MDegreeError, AssertionError):
    """An internal consistency check failed."""
