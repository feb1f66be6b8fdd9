from functools import lru_cache
from math import comb


@lru_cache(maxsize=4096)
def count_isolated_free_edge_sets(ell: int, m: int, r: int) -> int:
    """Number of m-edge sets of K_ell^r covering all ell labeled vertices.

    Inclusion-exclusion over the set of vertices left uncovered:
    sum_j (-1)^j C(ell, j) C(C(ell - j, r), m).
    """
    if ell < 0 or m < 0 or r < 1:
        return 0
    if ell == 0:
        return 1 if m == 0 else 0
    if ell < r or m == 0:
        return 0
    total = 0
    for j in range(ell + 1):
        term = comb(ell, j) * comb(comb(ell - j, r), m)
        total += -term if j % 2 else term
    return total


def count_subgraph_class(n: int, ell: int, m: int, r: int) -> int:
    """|S_{l,m}|: edge-induced subhypergraphs of K_n^r with l vertices and m edges."""
    if ell > n:
        return 0
    return comb(n, ell) * count_isolated_free_edge_sets(ell, m, r)
