"""Exception types raised by kinstatic."""


class KinstaticError(ValueError):
    """Base class for all library errors."""


class UnknownAlgebraError(KinstaticError):
    pass


class ParameterError(KinstaticError):
    pass


class DimensionError(KinstaticError):
    pass


class NotNilpotentError(KinstaticError):
    """Raised when a truncated BCH product is requested on an algebra of step > 2."""


class ChartError(KinstaticError):
    """Chart kind or orbit class does not match the requested operation."""
