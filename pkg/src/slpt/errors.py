"""Exception types shared by the slpt modules."""


class SlptError(Exception):
    """Base class for all slpt errors."""


class NonPositiveCoefficient(SlptError):
    pass


class UnorderedBreakpoints(SlptError):
    pass


class SingularFamilyPole(SlptError):
    pass


class DegenerateInterval(SlptError):
    pass


class OutOfDomain(SlptError):
    pass


class NonSmoothCoefficient(SlptError):
    pass


class NotRobinEnd(SlptError):
    pass


class RootBracketingFailure(SlptError):
    pass


class MissedRootSuspected(SlptError):
    pass


class TailEstimateExceeded(SlptError):
    pass


class QuadratureFailure(SlptError):
    pass


class ZeroModePresent(SlptError):
    pass


class NonPositiveDenominator(SlptError):
    pass


class NegativeRadicand(SlptError):
    pass
