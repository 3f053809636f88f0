"""Exception hierarchy shared by every module."""


class TiltwallError(ValueError):
    """Base class; all domain errors derive from it."""


class LatticeViolation(TiltwallError):
    pass


class ParseError(TiltwallError):
    pass


class BothZero(TiltwallError):
    pass


class ZeroRank(TiltwallError):
    pass


class NegativeDiscriminant(TiltwallError):
    pass


class DegenerateDiscriminant(TiltwallError):
    pass


class UnsupportedLocus(TiltwallError):
    pass


class UnboundedRegion(TiltwallError):
    pass


class AboveDBound(TiltwallError):
    pass


class NotASheafClass(TiltwallError):
    pass


class OutOfRange(TiltwallError):
    pass


class OutOfDomain(TiltwallError):
    pass


class UnknownCheck(TiltwallError):
    pass


class MixedRadicals(TiltwallError):
    """Arithmetic between a+b*sqrt(D) and a+b*sqrt(D') with D != D'."""
