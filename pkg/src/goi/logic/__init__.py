from .syntax import (  # noqa: F401
    Ax,
    Bin,
    Cut,
    DualVar,
    Exchange,
    Formula,
    Par,
    PlusL,
    PlusR,
    ProofTree,
    TensorRule,
    Top,
    TopRule,
    Var,
    With,
    Zero,
    check_proof,
    cut_count,
    depth,
    dual,
    fmt,
    is_mll_formula,
    is_mll_proof,
    leaf_paths,
    parse_formula,
    parse_proof,
    sequent_of,
)
from .rewrite import normalize_mll  # noqa: F401
from .goi1 import interpret_mll_goi1, soundness_check_mll  # noqa: F401
from .locations import allocate_goi1, allocate_matricial  # noqa: F401
from .matricial import (  # noqa: F401
    InterpretationBasis,
    default_basis,
    interpret_mall_matricial,
    parse_basis,
    sequent_dual_witnesses,
)
from . import corpus  # noqa: F401
