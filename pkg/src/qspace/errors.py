"""Exception hierarchy.

Every error carries ``param``, the name of the offending parameter, so the
CLI can report it.  Validation problems derive from :class:`ValueError`.
"""


class QSpaceError(Exception):
    def __init__(self, message, param=None):
        super().__init__(message)
        self.param = param


class ValidationError(QSpaceError, ValueError):
    pass


class UnsupportedCardinality(ValidationError):
    pass


class DivisionByZero(QSpaceError, ZeroDivisionError):
    pass


class DimensionMismatch(ValidationError):
    pass


class AmbientMismatch(ValidationError):
    pass


class NotDirectSum(ValidationError):
    pass


class InvalidDimension(ValidationError):
    pass


class EmptyFamily(ValidationError):
    pass


class DuplicateMember(ValidationError):
    pass


class NotIntersecting(ValidationError):
    pass


class RangeViolation(ValidationError):
    pass


class InfeasibleScale(QSpaceError):
    """Requested enumeration exceeds the configured guard limit."""


class InvariantViolation(QSpaceError, AssertionError):
    """An internal consistency check failed; indicates a bug."""


class IdentityViolation(InvariantViolation):
    pass


def guard(size, limit, param, guard_limit=1.0):
    """Raise InfeasibleScale when ``size`` exceeds ``limit * guard_limit``."""
    if size > limit * guard_limit:
        raise InfeasibleScale(
            f"{param}: enumeration size {size} exceeds guard {int(limit * guard_limit)} "
            "(raise --guard-limit to opt in)",
            param=param,
        )
