import logging
import math
from fractions import Fraction
from itertools import combinations, permutations
from typing import List, Tuple

import numpy as np

from hyperplant.config import AUTOMORPHISM_MAX_VERTICES, MOTIF_MAX_VERTICES, MOTIF_SEARCH_NODE_BUDGET
from hyperplant.core.errors import BudgetExceededError, InvalidArgumentError, MotifNotFoundError, RegimeError
from hyperplant.core.schemas import BalancedMotif
from hyperplant.balanced.density import is_balanced, popcounts, superset_masks
from hyperplant.hypergraph.embedding import count_injective_embeddings
from hyperplant.hypergraph.structures import Hypergraph, canonical_edge

logger = logging.getLogger(__name__)

BRACKET = 10**9


def decimal_fraction(x: float) -> Fraction:
    """The exponent as the decimal literal it was written as (0.3 -> 3/10)."""
    return Fraction(repr(float(x)))


def ratio_interval(alpha: float, beta: float, gamma: float) -> Tuple[Fraction, Fraction]:
    """(1/beta, gamma/alpha) bracketed inward on a 1e-9 grid."""
    a, b, g = decimal_fraction(alpha), decimal_fraction(beta), decimal_fraction(gamma)
    lo, hi = 1 / b, g / a
    lo_in = Fraction(math.ceil(lo * BRACKET), BRACKET)
    hi_in = Fraction(math.floor(hi * BRACKET), BRACKET)
    return max(lo, lo_in), min(hi, hi_in)


def simplest_fraction_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Minimal-denominator rational strictly inside (lo, hi), for 0 <= lo < hi."""
    if not 0 <= lo < hi:
        raise InvalidArgumentError(f"Empty or negative interval ({lo}, {hi})")
    whole = lo.numerator // lo.denominator
    if whole + 1 < hi:
        return Fraction(whole + 1)
    if lo == whole:
        return whole + Fraction(1, math.floor(1 / (hi - whole)) + 1)
    return whole + 1 / simplest_fraction_between(1 / (hi - whole), 1 / (lo - whole))


def check_motif_regime(alpha: float, beta: float, gamma: float, r: int) -> None:
    if r < 2:
        raise InvalidArgumentError(f"r >= 2 violated (r={r})")
    if not 0 < alpha < beta < r - 1:
        raise InvalidArgumentError(f"0 < alpha < beta < r-1 violated (alpha={alpha}, beta={beta}, r={r})")
    if not 0 < gamma < 1:
        raise InvalidArgumentError(f"0 < gamma < 1 violated (gamma={gamma})")
    a, b, g = decimal_fraction(alpha), decimal_fraction(beta), decimal_fraction(gamma)
    if not g < Fraction(1, 2):
        raise RegimeError(f"Motif test needs gamma < 1/2 (gamma={gamma})")
    if not a < b * g:
        raise RegimeError(f"Motif test needs alpha < beta*gamma (alpha={alpha}, beta*gamma={float(b * g):.6g})")


def automorphism_count(motif: Hypergraph) -> int:
    """|Aut(motif)| as the number of self-embeddings on its own vertex set."""
    return count_injective_embeddings(motif, motif)


def automorphism_count_by_permutations(motif: Hypergraph) -> int:
    """Checks every permutation of V(motif); for small motifs only."""
    vertices = sorted(motif.vertices())
    if len(vertices) > AUTOMORPHISM_MAX_VERTICES:
        raise BudgetExceededError(f"{len(vertices)}! permutations exceed the automorphism budget")
    count = 0
    for perm in permutations(vertices):
        mapping = dict(zip(vertices, perm))
        if all(canonical_edge(mapping[v] for v in e) in motif.edges for e in motif.edges):
            count += 1
    return count


class _Search:
    """Depth-first search over m-subsets of E(K_l^r) in rank order, pruned on sub-density."""

    def __init__(self, ell: int, m: int, r: int, budget: int):
        self.ell, self.m, self.r = ell, m, r
        self.budget = budget
        self.nodes = 0
        self.edges = list(combinations(range(ell), r))
        self.edge_masks = [sum(1 << v for v in e) for e in self.edges]
        self.supersets = [superset_masks(mask, ell) for mask in self.edge_masks]
        # Most edges any vertex subset may induce: count * l <= m * |V'|
        self.limit = (m * popcounts(ell)) // ell
        self.counts = np.zeros(1 << ell, dtype=np.int64)
        self.full = (1 << ell) - 1

    def run(self) -> List[int] | None:
        chosen: List[int] = []
        return chosen if self._extend(0, chosen, 0) else None

    def _extend(self, start: int, chosen: List[int], covered: int) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetSpent()
        remaining = self.m - len(chosen)
        if remaining == 0:
            return covered == self.full
        if bin(self.full & ~covered).count("1") > self.r * remaining:
            return False
        for i in range(start, len(self.edges) - remaining + 1):
            idx = self.supersets[i]
            self.counts[idx] += 1
            if (self.counts[idx] <= self.limit[idx]).all():
                chosen.append(i)
                if self._extend(i + 1, chosen, covered | self.edge_masks[i]):
                    return True
                chosen.pop()
            self.counts[idx] -= 1
        return False


class _BudgetSpent(Exception):
    pass


def find_balanced_motif(alpha: float, beta: float, gamma: float, r: int) -> BalancedMotif:
    """Canonical-smallest balanced motif with ratio strictly inside (1/beta, gamma/alpha)."""
    check_motif_regime(alpha, beta, gamma, r)
    lo, hi = ratio_interval(alpha, beta, gamma)
    target = simplest_fraction_between(lo, hi)
    logger.debug("motif target %s in (%s, %s)", target, float(lo), float(hi))

    budget_left = MOTIF_SEARCH_NODE_BUDGET
    budget_note = f"{MOTIF_SEARCH_NODE_BUDGET} nodes, at most {MOTIF_MAX_VERTICES} vertices"
    k = 1
    while k * target.denominator <= MOTIF_MAX_VERTICES:
        ell, m = k * target.denominator, k * target.numerator
        k += 1
        if m > math.comb(ell, r) or m * r < ell:
            continue
        search = _Search(ell, m, r, budget_left)
        try:
            found = search.run()
        except _BudgetSpent:
            raise MotifNotFoundError(str(target), budget_note) from None
        budget_left -= search.nodes
        logger.debug("search l=%d m=%d visited %d nodes", ell, m, search.nodes)
        if found is None:
            continue

        motif = Hypergraph(n=ell, r=r, edges=[tuple(v + 1 for v in search.edges[i]) for i in found])
        balanced, certificate = is_balanced(motif)
        if not balanced:
            raise ArithmeticError(f"Search returned an unbalanced motif for l={ell}, m={m}")
        return BalancedMotif(
            motif=motif,
            ell=ell,
            m=m,
            ratio=Fraction(m, ell),
            aut_count=automorphism_count(motif),
            certificate=certificate,
        )
    raise MotifNotFoundError(str(target), budget_note)
