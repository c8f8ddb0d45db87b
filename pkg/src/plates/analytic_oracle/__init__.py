"""Independent checks: pointwise indicators and Laplace-transform values at rational points."""
from .indicators import (
    chamber_indicator,
    dual_face_indicator,
    minkowski_indicator,
    plate_indicator,
    tree_cone_indicator,
    tree_dual_basis,
)
from .laplace import eval_hatP1, eval_P, eval_P1, eval_tree_rhs
from .points import GenericityPolicy, Mode, Oracle, RationalPoint, is_generic, sample_generic_point
from .verify import (
    Combination,
    Composite,
    DualFace,
    Meet,
    Plate,
    VerificationReport,
    WeylChamber,
    combination,
    evaluate,
    verify_identity,
)
from .expressions import parse_side

__all__ = [
    "Combination",
    "Composite",
    "DualFace",
    "GenericityPolicy",
    "Meet",
    "Mode",
    "Oracle",
    "Plate",
    "RationalPoint",
    "VerificationReport",
    "WeylChamber",
    "chamber_indicator",
    "combination",
    "dual_face_indicator",
    "eval_P",
    "eval_P1",
    "eval_hatP1",
    "eval_tree_rhs",
    "evaluate",
    "is_generic",
    "minkowski_indicator",
    "parse_side",
    "plate_indicator",
    "sample_generic_point",
    "tree_cone_indicator",
    "tree_dual_basis",
    "verify_identity",
]
