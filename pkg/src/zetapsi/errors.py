"""Exception hierarchy.

Every error raised by the library derives from :class:`ZetaPsiError`.  The
split between :class:`DomainError` and :class:`NumericalError` is what the CLI
maps onto exit codes.
"""

from __future__ import annotations


class ZetaPsiError(Exception):
    """Base class for all library errors."""


class DomainError(ZetaPsiError, ValueError):
    """An argument lies outside the domain of the requested function."""


class OutOfDomain(DomainError):
    pass


class PoleAtOne(DomainError):
    def __init__(self, msg: str = "pole at s=1"):
        super().__init__(msg)


class OutOfDisk(DomainError):
    pass


class TooFarFromPole(DomainError):
    pass


class TooManyTerms(DomainError):
    pass


class UnsupportedIndex(DomainError):
    pass


class NumericalError(ZetaPsiError, ArithmeticError):
    """A numerical procedure failed to reach its tolerance."""


class TailNotConverged(NumericalError):
    pass


class AccelerationStalled(NumericalError):
    pass


class DepthExceeded(NumericalError):
    pass


class OrderUnavailable(NumericalError):
    pass


class NoBracket(NumericalError):
    pass


class ExtrapolationDiverged(NumericalError):
    pass


class ViolationFound(ZetaPsiError):
    """A mathematical check failed at a specific abscissa."""

    def __init__(self, msg: str, s=None, slack=None, err=None, report=None):
        super().__init__(msg)
        self.s = s
        self.slack = slack
        self.err = err
        self.report = report
