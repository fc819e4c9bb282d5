"""Exception hierarchy shared by every layer of the library."""


class HalfGcdError(Exception):
    """Base class for all library errors."""


class DivisionByZero(HalfGcdError, ZeroDivisionError):
    pass


class NotInvertible(DivisionByZero):
    """A power series with zero constant term was inverted."""


class UnsupportedLength(HalfGcdError):
    """Transform length exceeds the two-adicity of the field."""


class LengthOverflow(HalfGcdError):
    """Polynomial does not fit in the requested transform length."""


class LengthMismatch(HalfGcdError):
    pass


class DegreeMismatch(HalfGcdError):
    pass


class AbnormalSequence(HalfGcdError):
    """A normal-case algorithm met a quotient of degree other than one."""


class PreconditionViolated(HalfGcdError, ValueError):
    pass


class Undefined(HalfGcdError, ValueError):
    """gcd(0, 0) was requested."""
