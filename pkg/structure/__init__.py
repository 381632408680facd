"""
Structural predicates: bipartiteness, reducibility, weak irreducibility.
"""

from structure.bipartite import (
    Bipartition,
    BipartitionKind,
    detect_bipartitions,
    find_even_bipartition,
    find_odd_bipartition,
    find_weak_even_bipartitions,
    find_weak_odd_bipartitions,
    is_even_bipartite,
    is_odd_bipartite,
    is_weakly_even_bipartite,
    is_weakly_odd_bipartite,
    validate_index_set,
)
from structure.graphs import (
    influence_graph,
    is_strongly_connected,
    is_weakly_irreducible,
    representing_graph,
)
from structure.reducibility import find_reducing_set, is_irreducible, is_reducible_for

__all__ = [
    "Bipartition",
    "BipartitionKind",
    "detect_bipartitions",
    "find_even_bipartition",
    "find_odd_bipartition",
    "find_weak_even_bipartitions",
    "find_weak_odd_bipartitions",
    "is_even_bipartite",
    "is_odd_bipartite",
    "is_weakly_even_bipartite",
    "is_weakly_odd_bipartite",
    "validate_index_set",
    "influence_graph",
    "is_strongly_connected",
    "is_weakly_irreducible",
    "representing_graph",
    "find_reducing_set",
    "is_irreducible",
    "is_reducible_for",
]
