from .counting import count_isolated_free_edge_sets, count_subgraph_class
from .embedding import count_injective_embeddings
from .structures import (
    AdjacencyTensor,
    EdgeSubgraph,
    Hyperedge,
    Hypergraph,
    edge_table,
    induced_vertices,
    rank_edge,
    unrank_edge,
)
from .textio import format_hypergraph, parse_hypergraph

__all__ = [
    "AdjacencyTensor",
    "EdgeSubgraph",
    "Hyperedge",
    "Hypergraph",
    "count_injective_embeddings",
    "count_isolated_free_edge_sets",
    "count_subgraph_class",
    "edge_table",
    "format_hypergraph",
    "induced_vertices",
    "parse_hypergraph",
    "rank_edge",
    "unrank_edge",
]
