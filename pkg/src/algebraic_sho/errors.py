"""Exception types raised across the package."""


class AlgebraError(Exception):
    """Base class for errors raised by the symbolic engine."""


class DivisionByZero(AlgebraError, ZeroDivisionError):
    pass


class NotInField(AlgebraError, ValueError):
    """A value left the coefficient field (for instance an irrational square root)."""


class UnsupportedExponent(AlgebraError, ValueError):
    """An exponent is not affine in the ladder operators."""


class UnboundIndeterminate(AlgebraError, ValueError):
    """A coefficient still depends on xi but no numeric value was supplied."""


class SpaceMismatch(AlgebraError, ValueError):
    pass


class InvalidArgument(AlgebraError, ValueError):
    pass
