"""Exception hierarchy shared by every module of the package."""


class SkeinError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""


class NotDivisible(SkeinError, ArithmeticError):
    pass


class DivisionByZero(SkeinError, ZeroDivisionError):
    pass


class NegativeExponent(SkeinError, ValueError):
    pass


class ZeroPolynomial(SkeinError, ValueError):
    pass


class NotAdmissible(SkeinError, ValueError):
    pass


class BoundaryMismatch(SkeinError, ValueError):
    pass


class TooLarge(SkeinError, RuntimeError):
    pass


class ParseError(SkeinError, ValueError):
    pass


class DanglingEdge(ParseError):
    pass


class NotPlanar(SkeinError, ValueError):
    pass


class OddColorOnSingular(SkeinError, ValueError):
    pass


class ReductionStuck(SkeinError, RuntimeError):
    pass


class InternalNotDivisible(SkeinError, ArithmeticError):
    pass


class CacheFormatError(SkeinError, ValueError):
    pass
