"""Exception hierarchy shared by every module of the package."""


class LeafError(Exception):
    """Base class for all errors raised by leafduffing."""


class InvalidBasis(LeafError, ValueError):
    """The basis n of a leaf function is not a positive integer."""


class DomainExceeded(LeafError, ValueError):
    """The argument lies outside the interval on which the function is finite."""


class PoleProximity(DomainExceeded):
    """The argument is within ``pole_guard`` of a blow-up point.

    Subclasses :class:`DomainExceeded` so callers that only care about
    "not evaluable here" can catch one type.
    """


class QuadratureFailure(LeafError, ArithmeticError):
    """Adaptive quadrature could not meet the requested tolerance."""


class NegativeRadicand(LeafError, ArithmeticError):
    """A square root received a negative argument beyond rounding."""


class RootBracketFailure(LeafError, ArithmeticError):
    """No sign change was found in the search window."""


class InvalidSpec(LeafError, ValueError):
    """A SolutionSpec violates A != 0, omega != 0 or B != 0, or carries a B it cannot use."""


class MissingB(InvalidSpec):
    """Solution types XI-XIV need the phase-scale constant B."""


class UnsupportedType(LeafError, ValueError):
    """The operation is only defined for some solution types."""


class IOFailure(LeafError, OSError):
    """An output file could not be written."""
