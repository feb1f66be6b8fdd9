from collections import defaultdict
from typing import Dict, List, Set

from hyperplant.hypergraph.structures import Hyperedge, Hypergraph, canonical_edge


def _neighbors(graph: Hypergraph) -> Dict[int, Set[int]]:
    adj: Dict[int, Set[int]] = defaultdict(set)
    for e in graph.edges:
        for v in e:
            adj[v].update(u for u in e if u != v)
    return adj


def _degrees(graph: Hypergraph) -> Dict[int, int]:
    deg: Dict[int, int] = defaultdict(int)
    for e in graph.edges:
        for v in e:
            deg[v] += 1
    return deg


def _placement_order(pattern: Hypergraph) -> List[int]:
    """Highest degree first, then keep extending along edges so candidates stay constrained."""
    deg = _degrees(pattern)
    adj = _neighbors(pattern)
    remaining = set(pattern.vertices())
    order: List[int] = []
    while remaining:
        frontier = [v for v in remaining if adj[v] & set(order)] or list(remaining)
        nxt = max(frontier, key=lambda v: (deg[v], -v))
        order.append(nxt)
        remaining.remove(nxt)
    return order


def count_injective_embeddings(pattern: Hypergraph, host: Hypergraph) -> int:
    """Injective vertex maps V(pattern) -> [host.n] sending every pattern edge onto a host edge."""
    if pattern.r != host.r:
        return 0
    if not pattern.edges:
        return 1
    order = _placement_order(pattern)
    position = {v: i for i, v in enumerate(order)}

    # Edges checked at the step where their last vertex is placed
    closing: List[List[Hyperedge]] = [[] for _ in order]
    for e in pattern.edges:
        closing[max(position[v] for v in e)].append(e)

    p_deg = _degrees(pattern)
    p_adj = _neighbors(pattern)
    h_deg = _degrees(host)
    h_adj = _neighbors(host)
    host_edges = host.edges
    host_vertices = sorted(host.vertices())

    image: Dict[int, int] = {}
    used: Set[int] = set()

    def extend(step: int) -> int:
        if step == len(order):
            return 1
        v = order[step]
        placed = [image[u] for u in p_adj[v] if u in image]
        if placed:
            candidates = set.intersection(*(h_adj[w] for w in placed))
        else:
            candidates = host_vertices
        total = 0
        for w in candidates:
            if w in used or h_deg[w] < p_deg[v]:
                continue
            image[v] = w
            if all(canonical_edge(image[u] for u in e) in host_edges for e in closing[step]):
                used.add(w)
                total += extend(step + 1)
                used.discard(w)
            del image[v]
        return total

    return extend(0)
