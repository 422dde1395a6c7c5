"""Exception hierarchy shared by all modules."""


class NdpaError(Exception):
    """Base class for every error raised by this package."""


class NotHermitian(NdpaError, ValueError):
    pass


class NotAntiHermitian(NdpaError, ValueError):
    pass


class NoConvergence(NdpaError, RuntimeError):
    pass


class NonFiniteState(NdpaError, FloatingPointError):
    """An integrated state vector acquired a NaN or infinite component."""


class DomainError(NdpaError, ValueError):
    pass


class UnstableRegime(NdpaError, ValueError):
    """The coupling violates ``2*chi < omega1 + omega2``."""


class NegativeM(NdpaError, ValueError):
    """A closed form that assumes ``m >= 0`` was called with ``m < 0``."""


class DegenerateTilt(NdpaError, ValueError):
    """Zero tilt (``zeta == 0``) where a quantity divides by ``zeta``."""


class GridTooCoarse(NdpaError, ValueError):
    pass


class SinhSingularity(NdpaError, ZeroDivisionError):
    """``coth(theta)`` evaluated too close to ``theta = 0``."""


class GridMismatch(NdpaError, ValueError):
    pass


class NonWindingDrive(NdpaError, ValueError):
    pass


class NormDrift(NdpaError, RuntimeError):
    pass


class DenominatorVanishes(NdpaError, ZeroDivisionError):
    """The mean photon number of the mode is zero, so Q is undefined."""


class TruncationUnsafe(NdpaError, RuntimeError):
    pass
