"""Dimensions of linear systems of surfaces in P^3 singular along general lines."""

__version__ = "0.1.0"

from .field import DEFAULT_PRIME, PrimeModulus, field_inverse, kernel_dimension, rank
from .interpolation import (
    DimensionReport,
    FatFlatSystem,
    Line,
    actual_dimension,
    analyze,
    conditions_count,
    expected_dimension,
    sample_lines,
    virtual_dimension,
)
from .divisors import (
    DivisorClass,
    cubo_cubic,
    gamma_cubo,
    gamma_todd,
    lines,
    todd,
    triple_product,
)
from .waldschmidt import alpha_symbolic, bound_report, conjectured_value, known_table

__all__ = [
    "__version__",
    "DEFAULT_PRIME",
    "PrimeModulus",
    "field_inverse",
    "rank",
    "kernel_dimension",
    "FatFlatSystem",
    "Line",
    "DimensionReport",
    "conditions_count",
    "virtual_dimension",
    "expected_dimension",
    "sample_lines",
    "actual_dimension",
    "analyze",
    "DivisorClass",
    "cubo_cubic",
    "todd",
    "lines",
    "triple_product",
    "gamma_cubo",
    "gamma_todd",
    "alpha_symbolic",
    "bound_report",
    "conjectured_value",
    "known_table",
]
