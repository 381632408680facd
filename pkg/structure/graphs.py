"""
Graphs attached to a tensor.

The representing graph is undirected: i and j are adjacent when they occur
together in a stored entry. Weak irreducibility means it is connected.

The influence graph is directed, i -> j when j occurs among i2..im of a
stored entry in row i. It is only used to pick a solver: strong connectivity
guarantees a positive Perron vector and a convergent shifted power iteration.
"""

from itertools import combinations

import networkx as nx

from common.logging_config import get_logger
from tensors.core import Tensor

logger = get_logger(__name__)


def representing_graph(T: Tensor) -> nx.Graph:
    """Undirected co-occurrence graph on vertices 1..n."""
    graph = nx.Graph()
    graph.add_nodes_from(range(1, T.dim + 1))
    for idx in T.entries:
        graph.add_edges_from(combinations(sorted(set(idx)), 2))
    return graph


def is_weakly_irreducible(T: Tensor) -> bool:
    """True iff the representing graph is connected on all n vertices."""
    connected = nx.is_connected(representing_graph(T))
    logger.debug(f"{T!r} weakly irreducible: {connected}")
    return connected


def influence_graph(T: Tensor) -> nx.DiGraph:
    """Directed graph i -> j for j among the trailing indices of row i."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(1, T.dim + 1))
    for idx in T.entries:
        head = idx[0]
        graph.add_edges_from((head, j) for j in set(idx[1:]) if j != head)
    return graph


def is_strongly_connected(T: Tensor) -> bool:
    return nx.is_strongly_connected(influence_graph(T))
