"""Exception hierarchy shared by every gyrokit module."""


class GyrokitError(ValueError):
    """Base class; the class name doubles as the violated-invariant label."""


class SingularMatrix(GyrokitError):
    pass


class NotHermitian(GyrokitError):
    pass


class NotPositiveDefinite(GyrokitError):
    pass


class NotTraceless(GyrokitError):
    pass


class NotUnitary(GyrokitError):
    pass


class NotRotation(GyrokitError):
    pass


class OutOfBall(GyrokitError):
    pass


class StructureMismatch(GyrokitError):
    pass


class ProbeOutOfBall(GyrokitError):
    pass


class Unclassified(GyrokitError):
    """Raised when a black-box map does not fit any classified family."""

    def __init__(self, message, max_residual=float("nan")):
        super().__init__(message)
        self.max_residual = max_residual


class NotDensity(GyrokitError):
    pass


class NotUnitDet(GyrokitError):
    pass
