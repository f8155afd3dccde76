"""Exact q-series toolkit for congruences of 1-shell totally symmetric plane
partitions modulo powers of 5."""

from .errors import (
    DecompositionResidual,
    InternalIdentityFailure,
    MissingPriorRows,
    NonIntegralNewtonStep,
    NonUnitLeadingCoefficient,
    PrecisionBudgetExceeded,
    PrecisionExceeded,
)
from .series import LaurentSeries, U5

__version__ = "0.1.0"

__all__ = [
    "LaurentSeries",
    "U5",
    "DecompositionResidual",
    "InternalIdentityFailure",
    "MissingPriorRows",
    "NonIntegralNewtonStep",
    "NonUnitLeadingCoefficient",
    "PrecisionBudgetExceeded",
    "PrecisionExceeded",
]
