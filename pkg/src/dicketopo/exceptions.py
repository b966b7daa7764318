"""Exception types raised by dicketopo."""


class DicketopoError(ValueError):
    """Base class for every error raised by this package."""


class ZeroStateError(DicketopoError):
    pass


class BasisIndexError(DicketopoError):
    pass


class ShapeError(DicketopoError):
    pass


class NoBipartitionError(DicketopoError):
    pass


class TooLargeError(DicketopoError):
    """Requested object exceeds a dense-engine size cap."""


class InvalidSpecError(DicketopoError):
    pass


class ImpossibleOutcomeError(DicketopoError):
    """A measurement branch with (numerically) zero probability was requested."""


class BadQubitError(DicketopoError):
    pass
