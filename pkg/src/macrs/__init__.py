"""Maximum agreement cherry-reduced subnetworks of level-1 orchard networks."""

from .model import (
    InfeasibleParametersError,
    InvalidNetworkError,
    LevelError,
    MacrsError,
    Network,
    NotOrchardError,
    UnknownTaxonError,
    UnknownVertexError,
    ValidationReport,
    above,
    reach,
    reticulations_below,
    taxa_below,
    validate,
    vertex_count,
)
from .decomposition import (
    BiconnectedComponent,
    ComponentPath,
    component_paths,
    decompose,
    find_bridges,
    level,
)
from .canonical import (
    IsomorphismWitness,
    canonical_text,
    shape_text,
    strongly_isomorphic,
    weakly_isomorphic,
)
from .enewick import ENewickError, parse, serialize
from .cherries import (
    Cherry,
    CherryKind,
    apply_sequence,
    classify,
    find_cherries,
    format_sequence,
    is_orchard,
    parse_sequence,
    reduce_cherry,
)
from .trimming import (
    candidate_sets,
    edge_fingerprint,
    reticulation_trimmed_subnetworks,
    rt_subnet_maker,
    set_fingerprint,
    topological_sort_f,
)
from .agreement import DPTable, build_table, macrs_simple
from .solver import MacrsResult, macrs, summarize
from .oracle import (
    CrsCatalog,
    OracleLimitsError,
    all_crs,
    chained_reticulation_network,
    diamond_caterpillar,
    oracle_macrs,
    random_network,
)

__all__ = [
    "BiconnectedComponent",
    "Cherry",
    "CherryKind",
    "ComponentPath",
    "CrsCatalog",
    "DPTable",
    "ENewickError",
    "InfeasibleParametersError",
    "InvalidNetworkError",
    "IsomorphismWitness",
    "LevelError",
    "MacrsError",
    "MacrsResult",
    "Network",
    "NotOrchardError",
    "OracleLimitsError",
    "UnknownTaxonError",
    "UnknownVertexError",
    "ValidationReport",
    "above",
    "all_crs",
    "apply_sequence",
    "build_table",
    "candidate_sets",
    "canonical_text",
    "chained_reticulation_network",
    "classify",
    "component_paths",
    "decompose",
    "diamond_caterpillar",
    "edge_fingerprint",
    "find_bridges",
    "find_cherries",
    "format_sequence",
    "is_orchard",
    "level",
    "macrs",
    "macrs_simple",
    "oracle_macrs",
    "parse",
    "parse_sequence",
    "random_network",
    "reach",
    "reduce_cherry",
    "reticulation_trimmed_subnetworks",
    "reticulations_below",
    "rt_subnet_maker",
    "serialize",
    "set_fingerprint",
    "shape_text",
    "strongly_isomorphic",
    "summarize",
    "taxa_below",
    "topological_sort_f",
    "validate",
    "vertex_count",
    "weakly_isomorphic",
]
