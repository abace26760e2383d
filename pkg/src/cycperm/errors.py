"""Exception types shared across the package."""


class CycpermError(Exception):
    """Base class for all library errors."""


class NotPrime(CycpermError):
    pass


class ReducibleModulus(CycpermError):
    pass


class DegreeMismatch(CycpermError):
    """Operands live on different degrees (field extensions or permutation domains)."""


class FieldMismatch(CycpermError):
    pass


class DivisionByZero(CycpermError):
    pass


class CharacteristicDividesN(CycpermError):
    pass


class NotADivisor(CycpermError):
    pass


class LengthMismatch(CycpermError):
    pass


class TooLarge(CycpermError):
    pass


class ZeroCode(CycpermError):
    pass


class NotADivisorOfLength(CycpermError):
    pass


class EmptyGenerators(CycpermError):
    pass


class NotCoprime(CycpermError):
    pass


class UnknownTag(CycpermError):
    pass


class BadDegree(CycpermError):
    pass


class ExprSyntaxError(CycpermError):
    """Group-expression parse failure.  `offset` is the 1-based byte position."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class ArityError(CycpermError):
    pass


class NoPattern(CycpermError):
    pass


class AmbiguousPattern(CycpermError):
    pass
