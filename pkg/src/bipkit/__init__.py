"""bipkit: bipartite graph families, exact induced-subgraph search, and
desk-scale verification suites for antichain and closure properties."""

from .graphs import (
    Bipartition,
    Graph,
    GraphParseError,
    bipartite_complement,
    connected_components,
    find_bipartition,
    induced_subgraph,
    parse_graph,
    serialize_graph,
)
from .matching import (
    Embedding,
    StepBudgetExceeded,
    are_isomorphic,
    count_induced_embeddings,
    find_induced_embedding,
    has_path_subgraph,
    is_free,
    verify_embedding,
)
from .perms import (
    BiconvexWitness,
    Permutation,
    compose,
    contains_pattern,
    inverse,
    is_convex,
    mu_star,
    permutation_graph,
    rho_star,
    star_perm_S,
    star_perm_T,
    verify_biconvex_witness,
)

__all__ = [
    "Bipartition",
    "Graph",
    "GraphParseError",
    "bipartite_complement",
    "connected_components",
    "find_bipartition",
    "induced_subgraph",
    "parse_graph",
    "serialize_graph",
    "Embedding",
    "StepBudgetExceeded",
    "are_isomorphic",
    "count_induced_embeddings",
    "find_induced_embedding",
    "has_path_subgraph",
    "is_free",
    "verify_embedding",
    "BiconvexWitness",
    "Permutation",
    "compose",
    "contains_pattern",
    "inverse",
    "is_convex",
    "mu_star",
    "permutation_graph",
    "rho_star",
    "star_perm_S",
    "star_perm_T",
    "verify_biconvex_witness",
]
