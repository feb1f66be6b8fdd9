from functools import lru_cache
from itertools import combinations
from math import comb
from typing import FrozenSet, Iterable, Tuple, TypeAlias

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from hyperplant.core.errors import InvalidArgumentError

# --- Edge Structure ---
# A hyperedge is a strictly increasing tuple of r vertex ids in [1, n]
Hyperedge: TypeAlias = Tuple[int, ...]
VertexSet: TypeAlias = FrozenSet[int]


def _check_canonical(edge: Hyperedge, n: int, r: int) -> None:
    if len(edge) != r:
        raise InvalidArgumentError(f"Edge {edge} has {len(edge)} vertices, expected r={r}")
    if any(b <= a for a, b in zip(edge, edge[1:])):
        raise InvalidArgumentError(f"Edge {edge} is not strictly increasing")
    if edge[0] < 1 or edge[-1] > n:
        raise InvalidArgumentError(f"Edge {edge} has a vertex outside [1, {n}]")


def canonical_edge(vertices: Iterable[int]) -> Hyperedge:
    return tuple(sorted(vertices))


def rank_edge(edge: Hyperedge, n: int, r: int) -> int:
    """Lexicographic rank of a canonical edge among all r-subsets of [n]."""
    if n < r:
        raise InvalidArgumentError(f"n={n} must be at least r={r}")
    edge = tuple(edge)
    _check_canonical(edge, n, r)

    index = 0
    prev = 0
    for i, v in enumerate(edge, start=1):
        # Sum of C(n - u, r - i) for prev < u < v, via the hockey-stick identity
        if v - 1 > prev:
            index += comb(n - prev, r - i + 1) - comb(n - v + 1, r - i + 1)
        prev = v
    return index


def unrank_edge(index: int, n: int, r: int) -> Hyperedge:
    total = comb(n, r)
    if not 0 <= index < total:
        raise InvalidArgumentError(f"Edge index {index} outside [0, {total})")

    edge = []
    v = 1
    for i in range(1, r + 1):
        while True:
            block = comb(n - v, r - i)
            if index < block:
                break
            index -= block
            v += 1
        edge.append(v)
        v += 1
    return tuple(edge)


@lru_cache(maxsize=16)
def edge_table(n: int, r: int) -> np.ndarray:
    """All edges of K_n^r in rank order, shape (M, r), 1-based, read-only."""
    table = np.array(list(combinations(range(1, n + 1), r)), dtype=np.int64).reshape(-1, r)
    table.setflags(write=False)
    return table


def induced_vertices(edges: Iterable[Hyperedge]) -> VertexSet:
    """Union of the vertex sets of the given edges."""
    vertices = set()
    for e in edges:
        vertices.update(e)
    return frozenset(vertices)


class Hypergraph(BaseModel):
    """An r-uniform hypergraph on the vertex set [1, n]."""

    model_config = ConfigDict(frozen=True)

    n: int
    r: int
    edges: FrozenSet[Hyperedge] = frozenset()

    @field_validator("edges", mode="before")
    @classmethod
    def _canonicalize(cls, value):
        return frozenset(canonical_edge(e) for e in value)

    @model_validator(mode="after")
    def _validate(self):
        if self.r < 2:
            raise ValueError(f"r={self.r} must be at least 2")
        if self.n < self.r:
            raise ValueError(f"n={self.n} must be at least r={self.r}")
        for e in self.edges:
            _check_canonical(e, self.n, self.r)
        return self

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> VertexSet:
        return induced_vertices(self.edges)

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def induced(self, vertices: Iterable[int]) -> "Hypergraph":
        keep = frozenset(vertices)
        return Hypergraph(n=self.n, r=self.r, edges=[e for e in self.edges if keep.issuperset(e)])

    def relabel(self, mapping: dict) -> "Hypergraph":
        return Hypergraph(n=self.n, r=self.r, edges=[tuple(mapping[v] for v in e) for e in self.edges])

    def compact(self) -> "Hypergraph":
        """Relabel the non-isolated vertices onto [1, l] preserving their order."""
        order = sorted(self.vertices())
        mapping = {v: i for i, v in enumerate(order, start=1)}
        return Hypergraph(n=max(len(order), self.r), r=self.r, edges=[tuple(mapping[v] for v in e) for e in self.edges])

    @classmethod
    def complete(cls, n: int, r: int) -> "Hypergraph":
        return cls(n=n, r=r, edges=combinations(range(1, n + 1), r))


class AdjacencyTensor(BaseModel):
    """Presence bits of all M = C(n, r) edges, indexed by edge rank."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    r: int
    bits: np.ndarray

    @field_validator("bits", mode="before")
    @classmethod
    def _as_bool_array(cls, value):
        return np.ascontiguousarray(np.asarray(value, dtype=bool).reshape(-1))

    @model_validator(mode="after")
    def _validate(self):
        if self.r < 2 or self.n < self.r:
            raise ValueError(f"Invalid shape n={self.n}, r={self.r}")
        expected = comb(self.n, self.r)
        if self.bits.shape != (expected,):
            raise ValueError(f"Tensor holds {self.bits.shape[0]} bits, expected M={expected}")
        return self

    def __eq__(self, other) -> bool:
        if not isinstance(other, AdjacencyTensor):
            return NotImplemented
        return self.n == other.n and self.r == other.r and np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash((self.n, self.r, self.bits.tobytes()))

    @property
    def M(self) -> int:
        return self.bits.shape[0]

    def count(self) -> int:
        return int(np.count_nonzero(self.bits))

    def to_hypergraph(self) -> Hypergraph:
        table = edge_table(self.n, self.r)
        present = table[self.bits]
        return Hypergraph(n=self.n, r=self.r, edges=[tuple(int(v) for v in row) for row in present])

    @classmethod
    def from_hypergraph(cls, graph: Hypergraph) -> "AdjacencyTensor":
        bits = np.zeros(comb(graph.n, graph.r), dtype=bool)
        for e in graph.edges:
            bits[rank_edge(e, graph.n, graph.r)] = True
        return cls(n=graph.n, r=graph.r, bits=bits)

    @classmethod
    def empty(cls, n: int, r: int) -> "AdjacencyTensor":
        return cls(n=n, r=r, bits=np.zeros(comb(n, r), dtype=bool))

    @classmethod
    def full(cls, n: int, r: int) -> "AdjacencyTensor":
        return cls(n=n, r=r, bits=np.ones(comb(n, r), dtype=bool))


class EdgeSubgraph(BaseModel):
    """A set of hyperedges of K_n^r; its vertex set is the one its edges induce."""

    model_config = ConfigDict(frozen=True)

    edges: FrozenSet[Hyperedge] = frozenset()

    @field_validator("edges", mode="before")
    @classmethod
    def _canonicalize(cls, value):
        return frozenset(canonical_edge(e) for e in value)

    @property
    def induced_vertices(self) -> VertexSet:
        return induced_vertices(self.edges)

    @property
    def ell(self) -> int:
        return len(self.induced_vertices)

    @property
    def m(self) -> int:
        return len(self.edges)
