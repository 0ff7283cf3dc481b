"""All-pairs lowest common ancestors in DAGs via chain/antichain decomposition."""

from .boolmat import BoolMatrix, bool_multiply, check_witnesses, witness_product
from .decompose import (
    Decomposition,
    decompose,
    decompose_sparse,
    greedy_decompose,
    has_exact_sizes,
    verify_decomposition,
)
from .errors import (
    CycleDetected,
    DimensionMismatch,
    EmptyQuerySet,
    InvalidBucketCount,
    InvalidEll,
    LabelMismatch,
    LcaError,
    NotAntichain,
    NotPathRespecting,
    ParseError,
    VerificationFailed,
)
from .graph import (
    NONE,
    AdjacencyLists,
    ClosureDag,
    Dag,
    TopoOrder,
    brute_force_all_pairs_lca,
    random_dag,
    topological_order,
    transitive_closure,
    verify_lca,
    verify_lca_matrix,
)
from .lca import all_pairs_lca, p_restricted_lca, q_restricted_lca, restricted_brute_force
from .maxmin import NEG_INF, dominance_product, maxmin_bucketed, maxmin_naive
from .order import path_respecting_refine, q_compact_order, verify_q_compact
from .spairs import s_pairs_lca, s_pairs_table

__version__ = "0.1.0"
