"""Python bindings for the fhs C++ core."""

from ._fhs import (
    NumericalError,
    ValidationError,
    approximate_kappas,
    degenerate_tau11_limit,
    exact_spectrum,
    periods,
    reference_endpoints,
    theta,
)

__all__ = [
    "NumericalError",
    "ValidationError",
    "approximate_kappas",
    "degenerate_tau11_limit",
    "exact_spectrum",
    "periods",
    "reference_endpoints",
    "theta",
]
