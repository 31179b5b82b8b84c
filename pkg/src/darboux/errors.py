"""Exception types shared across the package."""


class DarbouxError(Exception):
    """Base class for all errors raised by this package."""


class NotDivisible(DarbouxError):
    def __init__(self, remainder, message="polynomial division leaves a remainder"):
        super().__init__(f"{message}: {remainder}")
        self.remainder = remainder


class ExtensionRequired(DarbouxError):
    """A root lies outside the Gaussian rationals."""

    def __init__(self, part, message="roots not expressible over Q(i)"):
        super().__init__(f"{message}: {part}")
        self.part = part


class ParseError(DarbouxError):
    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset


class CoprimalityViolation(DarbouxError):
    def __init__(self, factor):
        super().__init__(f"P and Q share the common factor {factor}")
        self.factor = factor


class SeriesError(DarbouxError):
    """Invalid operation on a truncated series (e.g. inverting zero)."""


class InconclusiveTruncation(DarbouxError):
    pass


class NotFound(DarbouxError):
    pass


class AmbiguousKernel(DarbouxError):
    pass


class NotInvariant(DarbouxError):
    def __init__(self, message, remainder=None, clause=None):
        super().__init__(message)
        self.remainder = remainder
        self.clause = clause


class NotAParticularSolution(DarbouxError):
    pass


class TopDegreeViolation(DarbouxError):
    pass


class RSMismatch(DarbouxError):
    pass


class Inconsistent(DarbouxError):
    pass


class NoFactorFound(DarbouxError):
    pass


class PreconditionFailed(DarbouxError):
    pass


class SingularStart(DarbouxError):
    pass


class StepUnderflow(DarbouxError):
    pass


class ExcludedRegion(DarbouxError):
    pass
