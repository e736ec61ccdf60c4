"""Exception hierarchy shared by every module."""


class HorolibError(Exception):
    """Base class for all errors raised by horolib."""


class DimensionMismatch(HorolibError, ValueError):
    pass


class OutOfDomain(HorolibError, ValueError):
    pass


class MalformedStarCoordinate(HorolibError, ValueError):
    pass


class UnsupportedSpace(HorolibError):
    pass


class MonotonicityViolation(HorolibError, ValueError):
    pass


class RadiusUnreachable(HorolibError, ValueError):
    pass


class GaugeViolation(HorolibError, ValueError):
    pass


class NotABoundaryHorofunction(HorolibError, TypeError):
    pass


class NotIsometric(HorolibError):
    pass


class NotEscaping(HorolibError):
    pass


class Undecided(HorolibError):
    """A finite window neither stabilized nor crossed the cutoff.

    ``values`` holds the partial sequence so the caller can inspect it.
    """

    def __init__(self, message, values=()):
        super().__init__(message)
        self.values = tuple(values)
