from itertools import combinations
from math import comb

import numpy as np
import pytest

from hyperplant.core.errors import InvalidArgumentError
from hyperplant.hypergraph import (
    AdjacencyTensor,
    EdgeSubgraph,
    Hypergraph,
    count_injective_embeddings,
    count_isolated_free_edge_sets,
    count_subgraph_class,
    edge_table,
    format_hypergraph,
    parse_hypergraph,
    rank_edge,
    unrank_edge,
)
from hyperplant.models import derive_params, sample_null
from hyperplant.stats import compute_N, count_motif
from tests.utils import all_edges, brute_force_class_counts


@pytest.mark.parametrize("n,r", [(5, 2), (6, 3), (7, 4)])
def test_rank_follows_lexicographic_order(n, r):
    edges = list(combinations(range(1, n + 1), r))
    assert [rank_edge(e, n, r) for e in edges] == list(range(comb(n, r)))
    assert [unrank_edge(i, n, r) for i in range(comb(n, r))] == edges
    assert edge_table(n, r).shape == (comb(n, r), r)


def test_rank_rejects_non_canonical_edges():
    with pytest.raises(InvalidArgumentError):
        rank_edge((2, 1), 4, 2)
    with pytest.raises(InvalidArgumentError):
        rank_edge((1, 5), 4, 2)
    with pytest.raises(InvalidArgumentError):
        unrank_edge(6, 4, 2)


def test_tensor_and_edge_list_views_agree():
    graph = Hypergraph(n=5, r=3, edges=[(3, 1, 2), (2, 4, 5)])
    assert (1, 2, 3) in graph.edges
    Y = AdjacencyTensor.from_hypergraph(graph)
    assert Y.M == 10
    assert Y.count() == 2
    assert bool(Y.bits[rank_edge((1, 2, 3), 5, 3)])
    assert Y.to_hypergraph() == graph
    assert AdjacencyTensor.empty(5, 3).count() == 0
    assert AdjacencyTensor.full(5, 3).to_hypergraph() == Hypergraph.complete(5, 3)


def test_edge_subgraph_vertex_set_is_edge_induced():
    S = EdgeSubgraph(edges=[(1, 2), (2, 5)])
    assert S.induced_vertices == frozenset({1, 2, 5})
    assert (S.ell, S.m) == (3, 2)


def test_hypergraph_rejects_out_of_range_vertices():
    with pytest.raises(ValueError):
        Hypergraph(n=3, r=2, edges=[(1, 4)])


def test_isolated_free_counts_small_values():
    # Paths on 3 vertices, 3-edge spanning sets of K4, perfect matchings of K4, pairs of triples
    assert count_isolated_free_edge_sets(3, 2, 2) == 3
    assert count_isolated_free_edge_sets(4, 3, 2) == 16
    assert count_isolated_free_edge_sets(4, 2, 2) == 3
    assert count_isolated_free_edge_sets(4, 2, 3) == 6
    assert count_isolated_free_edge_sets(2, 2, 2) == 0
    assert count_isolated_free_edge_sets(0, 0, 2) == 1


@pytest.mark.parametrize("n,r,D", [(5, 2, 3), (5, 3, 3), (6, 4, 2)])
def test_class_counts_match_enumeration(n, r, D):
    reference = brute_force_class_counts(n, r, D)
    for ell in range(r, r * D + 1):
        for m in range(1, D + 1):
            assert count_subgraph_class(n, ell, m, r) == reference.get((ell, m), 0), (ell, m)


def test_text_format_keeps_edges_and_headers():
    graph = Hypergraph(n=6, r=3, edges=[(4, 5, 6), (1, 2, 3), (1, 3, 6)])
    text = format_hypergraph(graph, {"Z": "1 3 6"})
    assert text.splitlines() == ["# Z: 1 3 6", "6 3", "1 2 3", "1 3 6", "4 5 6"]

    parsed, headers = parse_hypergraph(text)
    assert parsed == graph
    assert headers == {"Z": "1 3 6"}


@pytest.mark.parametrize(
    "text",
    [
        "",
        "4\n1 2\n",
        "4 2\n2 1\n",
        "4 2\n1 2 3\n",
        "4 2\n1 x\n",
        "4 2\n1 2\n1 2\n",
        "4 2\n1 5\n",
    ],
)
def test_malformed_text_is_rejected(text):
    with pytest.raises(InvalidArgumentError):
        parse_hypergraph(text)


def test_injective_embeddings_of_small_patterns():
    triangle = Hypergraph(n=3, r=2, edges=[(1, 2), (2, 3), (1, 3)])
    k4 = Hypergraph.complete(4, 2)
    # 4 triangles in K4, 3! maps each
    assert count_injective_embeddings(triangle, k4) == 24
    assert count_injective_embeddings(triangle, triangle) == 6

    path = Hypergraph(n=3, r=2, edges=[(1, 2), (2, 3)])
    star = Hypergraph(n=4, r=2, edges=[(1, 2), (1, 3), (1, 4)])
    # Paths of length two through the center: 3 * 2 ordered choices of leaves
    assert count_injective_embeddings(path, star) == 6
    assert count_injective_embeddings(triangle, star) == 0


def test_embeddings_ignore_isolated_host_vertices():
    edge = Hypergraph(n=3, r=3, edges=[(1, 2, 3)])
    host = Hypergraph(n=8, r=3, edges=all_edges(4, 3))
    assert count_injective_embeddings(edge, host) == 4 * 6


# --- Copy counts ---
GRAPH_MOTIFS = [
    Hypergraph(n=3, r=2, edges=[(1, 2), (2, 3)]),
    Hypergraph(n=3, r=2, edges=[(1, 2), (2, 3), (1, 3)]),
    Hypergraph(n=4, r=2, edges=[(1, 2), (2, 3), (3, 4)]),
    Hypergraph(n=4, r=2, edges=[(1, 2), (1, 3), (1, 4)]),
    Hypergraph.complete(4, 2),
]
TRIPLE_MOTIFS = [
    Hypergraph(n=3, r=3, edges=[(1, 2, 3)]),
    Hypergraph(n=4, r=3, edges=[(1, 2, 3), (1, 2, 4)]),
    Hypergraph(n=5, r=3, edges=[(1, 2, 3), (3, 4, 5)]),
    Hypergraph.complete(4, 3),
]


def _complete_host_cases():
    for motif in GRAPH_MOTIFS + TRIPLE_MOTIFS:
        for n in range(len(motif.vertices()), 8):
            yield motif, n


@pytest.mark.parametrize("motif,n", list(_complete_host_cases()))
def test_copies_in_complete_hypergraph_equal_N(motif, n):
    assert count_motif(Hypergraph.complete(n, motif.r), motif) == compute_N(motif, n)


@pytest.mark.parametrize("motif", GRAPH_MOTIFS + TRIPLE_MOTIFS)
def test_copy_count_is_invariant_under_relabeling(motif):
    n, r = 8, motif.r
    params = derive_params(n, r, 0.1, 0.3, 0.9)
    rng = np.random.default_rng(3)
    for trial in range(3):
        host = sample_null(params, seed=2, trial=trial).to_hypergraph()
        perm = rng.permutation(n) + 1
        shuffled = host.relabel({v: int(perm[v - 1]) for v in range(1, n + 1)})
        assert shuffled.m == host.m
        assert count_motif(shuffled, motif) == count_motif(host, motif)

        ell = motif.n
        motif_perm = rng.permutation(ell) + 1
        renamed = motif.relabel({v: int(motif_perm[v - 1]) for v in range(1, ell + 1)})
        assert count_motif(host, renamed) == count_motif(host, motif)


def _class_bound_cases():
    for n in (4, 6, 10):
        for r in (2, 3):
            for ell in range(r, min(n, 8) + 1):
                for m in range(1, min(comb(ell, r), 6) + 1):
                    yield n, ell, m, r


@pytest.mark.parametrize("n,ell,m,r", list(_class_bound_cases()))
def test_class_count_is_below_the_labeled_bound(n, ell, m, r):
    assert count_subgraph_class(n, ell, m, r) <= n**ell * comb(ell, r) ** m
