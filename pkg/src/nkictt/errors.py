"""Exception types raised by the package."""


class ParameterError(ValueError):
    """An argument is outside its valid range."""


class CapacityError(ValueError):
    """A requested instance or enumeration is too large to materialize."""
