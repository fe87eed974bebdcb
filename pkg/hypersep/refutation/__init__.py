from hypersep.refutation.refuters import (
    CUT_CONSTANT,
    Refutation,
    RefuterStats,
    refute_csp2,
    refute_tseitin,
    tseitin_leaf_exponent,
)
from hypersep.refutation.resolution import (
    AXIOM,
    RESOLVE,
    ResolutionTrace,
    Step,
    check_resolution,
    dtree_to_resolution,
)
from hypersep.refutation.trees import (
    CheckResult,
    DecisionTree,
    Leaf,
    Query,
    check_dtree,
)

__all__ = [
    "AXIOM",
    "CUT_CONSTANT",
    "CheckResult",
    "DecisionTree",
    "Leaf",
    "Query",
    "RESOLVE",
    "Refutation",
    "RefuterStats",
    "ResolutionTrace",
    "Step",
    "check_dtree",
    "check_resolution",
    "dtree_to_resolution",
    "refute_csp2",
    "refute_tseitin",
    "tseitin_leaf_exponent",
]
