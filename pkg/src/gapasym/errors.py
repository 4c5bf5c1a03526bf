"""Exception hierarchy shared by every module of the package."""


class GapAsymError(Exception):
    """Base class for all errors raised by gapasym."""


class DomainError(GapAsymError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DegenerateRadii(DomainError):
    """Two radii coincide where a strict ordering is required."""


class RadiiOutOfBulk(DomainError):
    """A finite radius lies outside the support disk of the limiting density."""


class HardEdgeRadius(RadiiOutOfBulk):
    """A radius sits exactly on the support boundary; the expansions assume
    strict interior radii."""


class MissingRational(DomainError):
    """The closed-form route for the gamma-sum constant needs b as an explicit
    integer ratio, which was not supplied."""


class ConvergenceError(GapAsymError, RuntimeError):
    """An iterative scheme exhausted its term budget before converging."""


class ThetaNonpositive(GapAsymError, RuntimeError):
    """The theta factor of the oscillatory term came out nonpositive.  This
    cannot happen for real arguments and purely imaginary modulus; it signals
    a bug in the caller's reduction of the theta argument."""
