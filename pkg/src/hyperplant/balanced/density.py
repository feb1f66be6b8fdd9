from fractions import Fraction
from typing import FrozenSet, Iterable, List, Tuple

import numpy as np

from hyperplant.config import DENSITY_VERTEX_BUDGET
from hyperplant.core.errors import BudgetExceededError, InvalidArgumentError
from hyperplant.core.schemas import DensityCertificate
from hyperplant.hypergraph.structures import Hypergraph


def popcounts(size: int) -> np.ndarray:
    """Number of set bits of every mask in [0, 2^size)."""
    masks = np.arange(1 << size, dtype=np.int64)
    pop = np.zeros(1 << size, dtype=np.int64)
    for bit in range(size):
        pop += (masks >> bit) & 1
    return pop


def superset_masks(edge_mask: int, size: int) -> np.ndarray:
    masks = np.arange(1 << size, dtype=np.int64)
    return np.flatnonzero((masks & edge_mask) == edge_mask)


def induced_edge_counts(graph: Hypergraph) -> Tuple[List[int], np.ndarray, np.ndarray]:
    """For every vertex subset (bitmask over the sorted vertices): induced edge count and size."""
    order = sorted(graph.vertices())
    if len(order) > DENSITY_VERTEX_BUDGET:
        raise BudgetExceededError(
            f"Density table over {len(order)} vertices exceeds the budget of {DENSITY_VERTEX_BUDGET}"
        )
    bit = {v: i for i, v in enumerate(order)}
    counts = np.zeros(1 << len(order), dtype=np.int64)
    for e in graph.edges:
        counts[superset_masks(sum(1 << bit[v] for v in e), len(order))] += 1
    return order, counts, popcounts(len(order))


def _mask_vertices(mask: int, order: List[int]) -> FrozenSet[int]:
    return frozenset(v for i, v in enumerate(order) if mask >> i & 1)


def max_subgraph_density(graph: Hypergraph, all_witnesses: bool = False):
    """Max over nonempty V' of |E(H[V'])| / |V'| with the smallest attaining V'.

    With `all_witnesses` the second element is the list of every attaining V'
    (ordered by size, then by sorted vertex tuple).
    """
    if not graph.edges:
        raise InvalidArgumentError("Density of a hypergraph without edges is undefined")
    order, counts, pop = induced_edge_counts(graph)

    density = np.zeros(counts.shape[0])
    density[1:] = counts[1:] / pop[1:]
    near = np.flatnonzero(density >= density.max() - 1e-9)
    best = max(Fraction(int(counts[i]), int(pop[i])) for i in near)

    # Exact confirmation by integer cross-multiplication
    scaled = counts * best.denominator - pop * best.numerator
    if (scaled[1:] > 0).any():
        raise ArithmeticError("Float screening missed the densest subset")
    hits = [_mask_vertices(int(i), order) for i in np.flatnonzero(scaled == 0) if i]
    hits.sort(key=lambda vs: (len(vs), sorted(vs)))
    return best, (hits if all_witnesses else hits[0])


def is_balanced(graph: Hypergraph) -> Tuple[bool, DensityCertificate]:
    """Non-strict balancedness: no vertex subset is denser than the whole."""
    best, witness = max_subgraph_density(graph)
    whole = Fraction(graph.m, len(graph.vertices()))
    balanced = best <= whole
    return balanced, DensityCertificate(max_sub_density=best, witness=witness, balanced=balanced)


def check_complement_inequality(
    graph: Hypergraph, sub: Hypergraph, sub_vertices: Iterable[int] | None = None
) -> bool:
    """(|E(H)| - |E(H')|) / (|V(H)| - |V(H')|) >= |E(H)| / |V(H)| for a balanced H."""
    vertices = graph.vertices()
    sub_vs = frozenset(sub.vertices() if sub_vertices is None else sub_vertices)
    if not sub.edges <= graph.edges:
        raise InvalidArgumentError("H' must be a subhypergraph of H")
    if not sub_vs >= sub.vertices():
        raise InvalidArgumentError("The vertex set of H' must contain its edges")
    if not sub_vs < vertices:
        raise InvalidArgumentError("V(H') must be a proper subset of V(H)")
    balanced, _ = is_balanced(graph)
    if not balanced:
        raise InvalidArgumentError("H must be balanced")

    left = Fraction(graph.m - sub.m, len(vertices) - len(sub_vs))
    return left >= Fraction(graph.m, len(vertices))
