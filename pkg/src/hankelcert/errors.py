"""Exception hierarchy shared by every hankelcert module."""


class HankelCertError(Exception):
    """Base class for all library errors."""


class EmptyDomain(HankelCertError):
    """An interval or box has no point inside the feasible domain."""


class BadLeadingTerm(HankelCertError):
    """A series does not have the leading term an operation requires."""


class MissingIndex(HankelCertError, KeyError):
    """A Grunsky coefficient needed by a formula is absent from the table."""


class AsymmetricTable(HankelCertError):
    """Entries (p, q) and (q, p) of a Grunsky table disagree."""


class NegativeRadicand(HankelCertError):
    """A modulus-cascade radicand is negative (table cannot come from S)."""


class OutsideDomain(HankelCertError):
    """A point lies outside the domain D1 beyond the membership tolerance."""


class BoundarySingularity(HankelCertError):
    """The gradient is requested where the radical factor vanishes."""


class BudgetExceeded(HankelCertError):
    """Branch-and-bound ran out of boxes before reaching the tolerance."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class LeftDomain(HankelCertError):
    """Newton iterates could not be kept inside D1."""


class NotSquareFree(HankelCertError):
    """The polynomial shares a factor with its derivative."""


class Inconclusive(HankelCertError):
    """An interval sign proof could not be completed within its budget."""
