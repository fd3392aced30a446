class PaleyError(Exception):
    """Base class for errors raised by this package."""


class InvalidInputError(PaleyError, ValueError):
    pass


class NotInvertibleError(PaleyError, ZeroDivisionError):
    pass


class PrecisionError(PaleyError, ArithmeticError):
    """A p-adic quantity could not be resolved at the working precision."""
