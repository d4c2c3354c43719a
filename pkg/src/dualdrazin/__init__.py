"""Drazin-type generalized inverses over the dual complex numbers.

The package splits into scalar and matrix arithmetic (dualnum, dualmat),
the inverse itself with its existence test (drazin), closed forms for
structured block matrices (blocks), adjacency formulas for dual-weighted
digraph families (digraphs), a randomised verification harness (harness),
JSON serialisation (serialize) and the ddz command line tool (cli).
"""

from .blocks import (
    THEOREMS,
    BlockInstance,
    Condition,
    HypothesisReport,
    abco_drazin,
    abio_drazin,
    bipartite_drazin,
    check_hypotheses,
    cline,
    closed_form,
    sum_pq_zero,
    tri_drazin,
)
from .digraphs import (
    AdjacencyBuild,
    DLinkedStars,
    DoubleStar,
    DutchWindmill,
    bipartite_dual,
    build_adjacency,
    dls_dual_drazin,
    ds_dual_drazin,
    dw_bc_zero,
    dw_dual_drazin,
    dw_group,
    graph_hypotheses,
    graph_spec_from_doc,
    graph_spec_to_doc,
    windmill_pattern,
)
from .drazin import (
    defining_residuals,
    drazin_complex,
    drazin_oracle,
    dual_drazin,
    dual_drazin_power,
    dual_exists,
    group_inverse,
    matrix_index,
)
from .dualmat import (
    DualMatrix,
    IndexReport,
    dblock,
    dmul,
    dpow,
    indices,
    phi_embed,
    rank_dual,
    rank_std,
)
from .dualnum import DualScalar, scalar_dual_drazin
from .errors import (
    DualDrazinError,
    GenerationFailed,
    HypothesisViolated,
    IndexTooLarge,
    InexactInput,
    NotAppreciable,
    NotDualDrazinInvertible,
    SchemaError,
    ShapeMismatch,
    SpecInvalid,
)
from .harness import (
    FAMILIES,
    GenConfig,
    VerifyReport,
    fuzz,
    gen_existence,
    gen_instance,
    gen_member,
    smith_rank_oracle,
)
from .serialize import (
    dump_matrix,
    load_matrix,
    matrix_from_doc,
    matrix_to_doc,
    scalar_from_doc,
    scalar_to_doc,
    vector_from_doc,
    vector_to_doc,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # dual arithmetic
    "DualScalar",
    "DualMatrix",
    "IndexReport",
    "dblock",
    "dmul",
    "dpow",
    "indices",
    "phi_embed",
    "rank_dual",
    "rank_std",
    "scalar_dual_drazin",
    # inverses
    "defining_residuals",
    "drazin_complex",
    "drazin_oracle",
    "dual_drazin",
    "dual_drazin_power",
    "dual_exists",
    "group_inverse",
    "matrix_index",
    # block closed forms
    "THEOREMS",
    "BlockInstance",
    "Condition",
    "HypothesisReport",
    "abco_drazin",
    "abio_drazin",
    "bipartite_drazin",
    "check_hypotheses",
    "cline",
    "closed_form",
    "sum_pq_zero",
    "tri_drazin",
    # digraphs
    "AdjacencyBuild",
    "DLinkedStars",
    "DoubleStar",
    "DutchWindmill",
    "bipartite_dual",
    "build_adjacency",
    "dls_dual_drazin",
    "ds_dual_drazin",
    "dw_bc_zero",
    "dw_dual_drazin",
    "dw_group",
    "graph_hypotheses",
    "graph_spec_from_doc",
    "graph_spec_to_doc",
    "windmill_pattern",
    # harness
    "FAMILIES",
    "GenConfig",
    "VerifyReport",
    "fuzz",
    "gen_existence",
    "gen_instance",
    "gen_member",
    "smith_rank_oracle",
    # serialisation
    "dump_matrix",
    "load_matrix",
    "matrix_from_doc",
    "matrix_to_doc",
    "scalar_from_doc",
    "scalar_to_doc",
    "vector_from_doc",
    "vector_to_doc",
    # errors
    "DualDrazinError",
    "GenerationFailed",
    "HypothesisViolated",
    "IndexTooLarge",
    "InexactInput",
    "NotAppreciable",
    "NotDualDrazinInvertible",
    "SchemaError",
    "ShapeMismatch",
    "SpecInvalid",
]
