"""Exception types shared across the package."""


class IdforgeError(Exception):
    """Base class for all domain errors raised by this package."""


class DenominatorDivisibleByP(IdforgeError):
    """Reduction mod p is undefined: p divides the reduced denominator."""


class DimensionMismatch(IdforgeError):
    """Matrix/vector shapes are incompatible."""


class NonUnitConstantTerm(IdforgeError):
    """Series inversion needs a unit constant term."""


class CharTwo(IdforgeError):
    """Square roots of unit series need characteristic != 2."""


class ConstantTermNotOne(IdforgeError):
    """sqrt of a unit series is only defined for constant term 1."""


class NotASimpleRoot(IdforgeError):
    """Newton lifting needs P'(seed) to be a unit at order 0."""


class PositiveCharacteristic(IdforgeError):
    """Operation divides by arbitrary integers and needs characteristic 0."""


class PrecisionExceeded(IdforgeError):
    """A component beyond the supported truncation order was requested."""


class NotOnCurve(IdforgeError):
    """Point (a, b) does not satisfy a^3 - a = b^2."""


class DenominatorVanishes(IdforgeError):
    """3a^2 - 1 = 0 at the requested point."""


class NonUnitDenominator(IdforgeError):
    """Embedding a fraction whose denominator is not a unit series."""


class CrossCheckMismatch(IdforgeError):
    """Two independent computations of the same value disagree (a bug)."""


class InsufficientPrecision(IdforgeError):
    """Series precision is below the soundness margin of a witness search."""


class PEqualsTwo(IdforgeError):
    """The mod-p construction requires p != 2."""


class ParseError(IdforgeError):
    """Expression syntax error; carries the offset of the offending token."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset
