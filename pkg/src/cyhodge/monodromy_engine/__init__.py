"""Local monodromy by numeric continuation and Jordan-datum bookkeeping, plus weight filtrations."""

from .companion import CompanionSystem, companion_system, expected_residue_trace
from .integrate import IntegrationError, TaylorIntegrator
from .local import (
    INCONSISTENT,
    REGULAR,
    TYPE_I,
    TYPE_II,
    TYPE_III,
    JordanBlock,
    LocalMonodromyDatum,
    NilpotentEndo,
    NotUnipotentError,
    PointType,
    UnipotencyVerificationError,
    classify_point,
    datum_from_exponents,
    datum_from_matrix,
    exp_nilpotent,
    hypergeometric_data,
    invariant_rank_defect,
    nilpotent_log,
    power_local_datum,
    type_from_datum,
    unipotency_order,
)
from .matrices import (
    MonodromyMatrix,
    MonodromyResult,
    ProductRelationError,
    default_basepoint,
    monodromy_matrices,
)
from .numeric import RankAmbiguityError, numeric_rank
from .weight import NotNilpotentError, WeightFiltration, check_axioms, weight_filtration

__all__ = [
    "CompanionSystem",
    "INCONSISTENT",
    "IntegrationError",
    "JordanBlock",
    "LocalMonodromyDatum",
    "MonodromyMatrix",
    "MonodromyResult",
    "NilpotentEndo",
    "NotNilpotentError",
    "NotUnipotentError",
    "PointType",
    "ProductRelationError",
    "REGULAR",
    "RankAmbiguityError",
    "TYPE_I",
    "TYPE_II",
    "TYPE_III",
    "TaylorIntegrator",
    "UnipotencyVerificationError",
    "WeightFiltration",
    "check_axioms",
    "classify_point",
    "companion_system",
    "datum_from_exponents",
    "datum_from_matrix",
    "default_basepoint",
    "exp_nilpotent",
    "expected_residue_trace",
    "hypergeometric_data",
    "invariant_rank_defect",
    "monodromy_matrices",
    "nilpotent_log",
    "numeric_rank",
    "power_local_datum",
    "type_from_datum",
    "unipotency_order",
    "weight_filtration",
]
