"""Exception hierarchy shared by every qcfeas module."""


class QcError(Exception):
    """Base class. ``index`` is the 1-based function index when raised
    from inside a cyclic sweep, otherwise ``None``."""

    index = None


class InvalidPoint(QcError, ValueError):
    pass


class DimensionMismatch(QcError, ValueError):
    pass


class DomainViolation(QcError, ValueError):
    pass


class NonFiniteValue(QcError, ArithmeticError):
    pass


class ZeroSubgradient(QcError, ArithmeticError):
    pass


class NonFiniteStep(QcError, ArithmeticError):
    pass


class ZeroSlope(QcError, ValueError):
    pass


class NonPositiveRadius(QcError, ValueError):
    pass


class NoFeasibleSamples(QcError, RuntimeError):
    pass


class NonConvergentInput(QcError, ValueError):
    pass


class EmptyTrace(QcError, ValueError):
    pass


class ParseError(QcError, ValueError):
    pass


class SchemaError(QcError, ValueError):
    pass


class UnknownFamily(SchemaError):
    pass
