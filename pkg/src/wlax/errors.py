"""Exception types raised across the package."""


class WlaxError(Exception):
    """Base class for all library errors."""


class InvalidFamily(WlaxError, ValueError):
    pass


class InvalidPartition(WlaxError, ValueError):
    pass


class InvalidRectangle(WlaxError, ValueError):
    pass


class ConstructionFailed(WlaxError):
    pass


class DegenerateForm(WlaxError, ValueError):
    pass


class PositiveWeight(WlaxError, ValueError):
    pass


class ShapeMismatch(WlaxError, ValueError):
    pass


class NonScalarLeading(WlaxError):
    pass


class SingularLeading(WlaxError):
    pass


class CompressionNotInvertible(WlaxError):
    pass


class PivotNotInvertible(WlaxError):
    pass


class OrthogonalityViolation(WlaxError, ValueError):
    pass


class FormMissing(WlaxError, ValueError):
    pass


class UnsupportedFamily(WlaxError, ValueError):
    pass
