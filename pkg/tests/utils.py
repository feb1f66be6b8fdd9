from collections import Counter
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable

from hyperplant.core.schemas import ProblemParams
from hyperplant.hypergraph.structures import Hyperedge, Hypergraph, canonical_edge, edge_table, induced_vertices


def all_edges(n: int, r: int) -> list:
    return [tuple(int(v) for v in row) for row in edge_table(n, r)]


def is_isomorphic(a: Hypergraph, b: Hypergraph) -> bool:
    """Edge-induced isomorphism by trying every bijection of the vertex sets."""
    va, vb = sorted(a.vertices()), sorted(b.vertices())
    if len(va) != len(vb) or a.m != b.m or a.r != b.r:
        return False
    for perm in permutations(vb):
        mapping = dict(zip(va, perm))
        if all(canonical_edge(mapping[v] for v in e) in b.edges for e in a.edges):
            return True
    return False


def brute_force_motif_count(host: Hypergraph, motif: Hypergraph) -> int:
    """Edge subsets of the host isomorphic to the motif, checked one subset at a time."""
    edges = host.sorted_edges()
    count = 0
    for subset in combinations(edges, motif.m):
        candidate = Hypergraph(n=host.n, r=host.r, edges=subset)
        if is_isomorphic(candidate, motif):
            count += 1
    return count


def brute_force_class_counts(n: int, r: int, D: int) -> Counter:
    """(l, m) -> number of edge sets of K_n^r with m <= D edges spanning l vertices."""
    edges = all_edges(n, r)
    counts: Counter = Counter()
    for m in range(1, D + 1):
        for S in combinations(edges, m):
            counts[(len(induced_vertices(S)), m)] += 1
    return counts


def brute_force_is_balanced(graph: Hypergraph) -> bool:
    vertices = sorted(graph.vertices())
    whole = Fraction(graph.m, len(vertices))
    for size in range(1, len(vertices) + 1):
        for subset in combinations(vertices, size):
            if Fraction(graph.induced(subset).m, size) > whole:
                return False
    return True


def centered_product(S: Iterable[Hyperedge], bits_of, q: Fraction) -> Fraction:
    """prod_{e in S} (Y_e - q) with exact rationals; bits_of(e) gives the presence of e."""
    value = Fraction(1)
    for e in S:
        value *= (1 if bits_of(e) else 0) - q
    return value


def small_params(n: int = 4, r: int = 2, alpha: float = 0.5, beta: float = 0.8, gamma: float = 0.25) -> ProblemParams:
    return ProblemParams(n=n, r=r, alpha=alpha, beta=beta, gamma=gamma)
