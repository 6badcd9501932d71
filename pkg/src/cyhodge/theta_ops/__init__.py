"""Exact arithmetic on differential operators written in theta = z d/dz."""

from .operator import ThetaOperator, invert, ore_mul, pullback, rescale, stirling2
from .parser import OperatorSyntaxError, format_operator, parse_operator
from .points import (
    IndicialError,
    PointLocation,
    indicial_polynomial,
    is_singular,
    local_exponents,
    singular_points,
)
from .poly import RationalPoly, factor_over_q, format_rational, rational_roots
from .series import (
    NoHolomorphicSolutionError,
    ResonanceError,
    SeriesError,
    SeriesSolution,
    annihilates,
    hadamard_annihilator,
    hadamard_series,
    recurrence_residuals,
    series_solution,
)

__all__ = [
    "IndicialError",
    "NoHolomorphicSolutionError",
    "OperatorSyntaxError",
    "PointLocation",
    "RationalPoly",
    "ResonanceError",
    "SeriesError",
    "SeriesSolution",
    "ThetaOperator",
    "annihilates",
    "factor_over_q",
    "format_operator",
    "format_rational",
    "hadamard_annihilator",
    "hadamard_series",
    "indicial_polynomial",
    "invert",
    "is_singular",
    "local_exponents",
    "ore_mul",
    "parse_operator",
    "pullback",
    "rational_roots",
    "recurrence_residuals",
    "rescale",
    "series_solution",
    "singular_points",
    "stirling2",
]
