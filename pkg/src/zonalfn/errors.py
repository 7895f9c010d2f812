"""Exception hierarchy shared by every evaluation route."""


class ZonalError(Exception):
    """Base class for all errors raised by zonalfn."""


class DomainError(ZonalError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(ZonalError, ValueError):
    """A Gamma or Pochhammer pole was hit."""


class ConvergenceError(ZonalError, ArithmeticError):
    """An iterative or series computation hit its iteration cap."""


class QuadratureNotConverged(ConvergenceError):
    """Order doubling reached the cap before two results agreed."""


class EpsOdd(DomainError):
    """Zonal functions exist only for the even representation (eps = 0)."""


class TranscriptionMismatch(ZonalError):
    """Two evaluation routes that must agree do not."""
