"""Exception hierarchy shared by all metakappa modules."""


class MetakappaError(Exception):
    """Base class for every error raised by this package."""


class PresentationError(MetakappaError, ValueError):
    pass


class NonPositive(PresentationError):
    pass


class RangeViolation(PresentationError):
    pass


class CongruenceViolation(PresentationError):
    pass


class InvalidG(PresentationError):
    pass


class TooLarge(MetakappaError, ValueError):
    pass


class LatticeError(MetakappaError):
    pass


class ClosureMismatch(LatticeError):
    pass


class NotNormal(LatticeError, ValueError):
    pass


class IsomorphismCheckFailed(LatticeError):
    pass


class LagrangeConverseViolation(LatticeError):
    pass


class NotADivisor(LatticeError, ValueError):
    pass


class WitnessError(MetakappaError):
    pass


class PreconditionViolation(WitnessError, ValueError):
    pass


class ConstructionFailed(WitnessError):
    pass


class UnsupportedGroup(WitnessError, ValueError):
    pass


class SizeMismatch(WitnessError, ValueError):
    pass


class InvalidQuery(MetakappaError, ValueError):
    pass
