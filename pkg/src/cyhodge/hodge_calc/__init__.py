from .formulas import (
    HodgeDegrees,
    HodgeError,
    HodgeNumbers,
    L2DegreeTable,
    PointProfile,
    RouteMismatchError,
    dim_h1_euler,
    dim_h1_profile,
    hodge_numbers,
    l2_degree_table,
    propagate_ab_pullback,
    solve_ab_corollary,
    symmetry_forced_hodge_numbers,
    yukawa_zero_count,
)

__all__ = [
    "HodgeDegrees",
    "HodgeError",
    "HodgeNumbers",
    "L2DegreeTable",
    "PointProfile",
    "RouteMismatchError",
    "dim_h1_euler",
    "dim_h1_profile",
    "hodge_numbers",
    "l2_degree_table",
    "propagate_ab_pullback",
    "solve_ab_corollary",
    "symmetry_forced_hodge_numbers",
    "yukawa_zero_count",
]
