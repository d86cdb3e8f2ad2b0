"""Attack-graph risk modeling and assessment for discrete manufacturing
systems.

Build weighted directed attack graphs from taxonomy-tagged threat
attributes, discover propagation paths, rank them by cumulative risk, find
the most attractive (lowest cumulative weight) attack path, and re-analyze
after what-if probability updates.
"""

from .analysis import (
    AttackPath,
    PathEnumeration,
    PropagationResult,
    RankedPath,
    RiskReport,
    enumerate_paths,
    path_risk,
    propagate,
    rank_paths,
    shortest_path,
    vector_consequence_pairs,
)
from .catalog import (
    CatalogEntry,
    Dimension,
    ThreatCatalog,
    builtin_catalog,
    load_catalog,
    validate_tags,
)
from .errors import (
    AttackGraphError,
    CatalogError,
    DomainError,
    GraphValidationError,
    PathNotInGraphError,
    SpecParseError,
    UnknownEdgeError,
    UnknownVertexError,
    UnreachableTargetError,
    WrongKindError,
)
from .graph import (
    AttackGraph,
    Edge,
    EdgeUpdate,
    ExploitMetrics,
    Vertex,
    VertexKind,
    apply_update,
    build_graph,
    degree_profile,
    edge_weight,
    exploitation_probability,
    graph_to_spec,
    parse_updates,
)

__version__ = "0.1.0"

__all__ = [
    "AttackGraph",
    "AttackGraphError",
    "AttackPath",
    "CatalogEntry",
    "CatalogError",
    "Dimension",
    "DomainError",
    "Edge",
    "EdgeUpdate",
    "ExploitMetrics",
    "GraphValidationError",
    "PathEnumeration",
    "PathNotInGraphError",
    "PropagationResult",
    "RankedPath",
    "RiskReport",
    "SpecParseError",
    "ThreatCatalog",
    "UnknownEdgeError",
    "UnknownVertexError",
    "UnreachableTargetError",
    "Vertex",
    "VertexKind",
    "WrongKindError",
    "apply_update",
    "build_graph",
    "builtin_catalog",
    "degree_profile",
    "edge_weight",
    "enumerate_paths",
    "exploitation_probability",
    "graph_to_spec",
    "load_catalog",
    "parse_updates",
    "path_risk",
    "propagate",
    "rank_paths",
    "shortest_path",
    "validate_tags",
    "vector_consequence_pairs",
]
