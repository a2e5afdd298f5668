"""Exception hierarchy."""


class MultibidError(Exception):
    """Base class for all package errors."""


class ContractViolation(MultibidError, ValueError):
    """Arguments break an operation's precondition (shapes, signs, ranges)."""


class NotAStaircase(MultibidError, ValueError):
    pass


class InstanceTooLarge(MultibidError, ValueError):
    pass


class SynthesisFailed(MultibidError):
    """No bid vector reproducing the requested cell set could be built."""


class MissingFactorization(MultibidError):
    pass


class EmptyProfile(MultibidError, ValueError):
    pass


class DegenerateFit(MultibidError, ValueError):
    pass
