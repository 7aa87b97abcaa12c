"""Exception hierarchy shared by every partlab module."""


class PartlabError(Exception):
    """Base class for all partlab errors."""


class ValidationError(PartlabError, ValueError):
    """Malformed input: empty part list, non-positive part, index out of range."""


class ApplicabilityError(PartlabError):
    """The hypotheses of the requested formula or bound do not hold."""


class CapacityError(PartlabError):
    """A computation would exceed its configured work budget."""


class ConsistencyError(PartlabError, AssertionError):
    """An internal cross-check failed. Always signals a bug."""


class SingularSeriesError(PartlabError, ZeroDivisionError):
    """Attempt to invert a power series with zero constant term."""
