"""Exception hierarchy shared by all modules."""


class KTilingError(Exception):
    """Base class for every error raised by this package."""


class InputError(KTilingError, ValueError):
    """Malformed or unsupported input (maps to CLI exit code 2)."""


class DimensionUnsupported(InputError):
    pass


class DegenerateInput(InputError):
    pass


class EmptyInput(InputError):
    pass


class ZeroDirection(InputError):
    pass


class NonOrthogonalDirection(InputError):
    pass


class NotGeneralPosition(KTilingError):
    """A lattice point sits on the relative boundary of a frame face."""

    def __init__(self, message, point=None, face=None):
        super().__init__(message)
        self.point = point
        self.face = face


class ExhaustedAttempts(KTilingError):
    pass


class SymmetryPreconditionFailed(KTilingError):
    pass


class InconsistentCounts(KTilingError):
    """Lattice counts disagree where they are guaranteed to agree (a bug)."""


class ToleranceNotReached(KTilingError):
    pass
