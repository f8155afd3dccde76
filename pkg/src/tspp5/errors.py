"""Exception types raised across the package."""


class Tspp5Error(Exception):
    """Base class for all package errors."""


class NonUnitLeadingCoefficient(Tspp5Error, ValueError):
    pass


class PrecisionExceeded(Tspp5Error, IndexError):
    """A coefficient was requested at or beyond a series' precision."""


class PrecisionBudgetExceeded(Tspp5Error):
    """A computation would need more base-series terms than configured."""


class DecompositionResidual(Tspp5Error, ArithmeticError):
    """A series is not a polynomial in X of the requested shape on its window."""


class MissingPriorRows(Tspp5Error, LookupError):
    pass


class NonIntegralNewtonStep(Tspp5Error, ArithmeticError):
    pass


class InternalIdentityFailure(Tspp5Error, AssertionError):
    """Two closed forms of the same function disagree: an arithmetic bug."""
