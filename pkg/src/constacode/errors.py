"""Exception hierarchy.

Every error raised on purpose by the library derives from ``ConstacodeError``;
the CLI maps ``BudgetExceeded`` to exit status 3 and everything else to 2.
"""


class ConstacodeError(ValueError):
    pass


class NonPrimeCharacteristic(ConstacodeError):
    pass


class ReduciblePolynomial(ConstacodeError):
    pass


class NonPrimitivePolynomialWhenDefaultRequested(ConstacodeError):
    pass


class DivisionByZero(ConstacodeError, ZeroDivisionError):
    pass


class ZeroElement(ConstacodeError):
    pass


class IncompatibleSubfield(ConstacodeError):
    pass


class NotCoprime(ConstacodeError):
    pass


class RNotDividingQMinus1(ConstacodeError):
    pass


class FieldMismatch(ConstacodeError):
    pass


class ZeroConstantTerm(ConstacodeError):
    pass


class WrongExtensionDegree(ConstacodeError):
    pass


class NotADivisor(ConstacodeError):
    pass


class BudgetExceeded(ConstacodeError):
    pass


class InconsistentInput(ConstacodeError):
    pass


class OddDistance(ConstacodeError):
    pass


class BadT(ConstacodeError):
    pass


class PreconditionViolated(ConstacodeError):
    pass


class NoRepresentation(ConstacodeError):
    pass


class OrderConditionFails(ConstacodeError):
    pass


class NotPrime(ConstacodeError):
    pass
