"""Domain error types shared by all modules.

Every failure of a documented precondition or invariant raises a subclass of
``DomainError``; the CLI maps these to exit status 1 and prints the class
name on stderr.  File parsing problems use ``resourceforge.io.FileFormatError``
instead (exit status 2).
"""


class DomainError(Exception):
    """Base class for domain-level failures."""


class NotHermitian(DomainError):
    pass


class NotUnitTrace(DomainError):
    pass


class NotPSD(DomainError):
    pass


class DimensionMismatch(DomainError):
    pass


class DimensionTooLarge(DomainError):
    pass


class EmptyKeepSet(DomainError):
    pass


class IndexOutOfRange(DomainError):
    pass


class RankOutOfRange(DomainError):
    pass


class NotBipartite(DomainError):
    pass


class ParamCountMismatch(DomainError):
    pass


class NotAQubit(DomainError):
    pass


class NotAQubitOnA(DomainError):
    pass


class NotUnitary(DomainError):
    pass


class NotIsometry(DomainError):
    pass


class UnequalSums(DomainError):
    pass


class BothZero(DomainError):
    pass


class NonCommuting(DomainError):
    pass


class IllegalStepForMode(DomainError):
    pass
