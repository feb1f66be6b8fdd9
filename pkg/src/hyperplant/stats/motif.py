import math
from typing import Dict

import mpmath

from hyperplant.balanced.search import automorphism_count
from hyperplant.config import MP_DPS
from hyperplant.core.errors import InvalidArgumentError
from hyperplant.core.schemas import BalancedMotif, MomentSummary, ProblemParams
from hyperplant.core.states import StatisticKind
from hyperplant.hypergraph.embedding import count_injective_embeddings
from hyperplant.hypergraph.structures import AdjacencyTensor, Hypergraph


def _motif_graph(motif: BalancedMotif | Hypergraph) -> Hypergraph:
    return motif.motif if isinstance(motif, BalancedMotif) else motif


def _aut(motif: BalancedMotif | Hypergraph) -> int:
    return motif.aut_count if isinstance(motif, BalancedMotif) else automorphism_count(motif)


def count_motif(H: Hypergraph | AdjacencyTensor, motif: BalancedMotif | Hypergraph) -> int:
    """Edge subsets of H whose edge-induced subhypergraph is isomorphic to the motif."""
    host = H.to_hypergraph() if isinstance(H, AdjacencyTensor) else H
    embeddings = count_injective_embeddings(_motif_graph(motif), host)
    aut = _aut(motif)
    if embeddings % aut:
        raise ArithmeticError(f"{embeddings} embeddings are not a multiple of |Aut| = {aut}")
    return embeddings // aut


def compute_N(motif: BalancedMotif | Hypergraph, n: int) -> int:
    """Copies of the motif in K_n^r."""
    ell = len(_motif_graph(motif).vertices())
    if n < ell:
        raise InvalidArgumentError(f"n >= l violated (n={n}, l={ell})")
    return math.comb(n, ell) * math.factorial(ell) // _aut(motif)


def exact_moments_motif_stat(params: ProblemParams, motif: BalancedMotif | Hypergraph) -> MomentSummary:
    graph = _motif_graph(motif)
    ell, m, r = len(graph.vertices()), graph.m, params.r
    N = compute_N(motif, params.n)

    with mpmath.workdps(MP_DPS):
        n = mpmath.mpf(params.n)
        p, q, rho = mpmath.mpf(params.p), mpmath.mpf(params.q), mpmath.mpf(params.rho)
        log_N = mpmath.log(N)
        # Two competing terms of the null variance bound
        var_q_pairs = (
            2 * mpmath.log(m)
            + log_N
            + ell * (1 - mpmath.mpf(1) / m) * mpmath.log(n)
            + r * (m - 1) * mpmath.log(ell)
            + (2 * m - 1) * mpmath.log(q)
        )
        var_q_single = (m + 1) * mpmath.log(m) + log_N + m * mpmath.log(q)
        var_p = (
            ell * mpmath.log(8)
            + log_N
            + (ell - 1) * mpmath.log(n)
            + (1 + r * m) * mpmath.log(ell)
            + (2 * ell - 1) * mpmath.log(rho)
            + (2 * m - mpmath.mpf(m) / ell) * mpmath.log(p)
        )
        values = {
            "EQ": float(N * q**m),
            "lambdaLB": float(N * rho**ell * p**m),
            "VarQBound": float(mpmath.exp(max(var_q_pairs, var_q_single))),
            "VarPBound": float(mpmath.exp(var_p)),
        }
    return MomentSummary(
        statistic=StatisticKind.MOTIF,
        values=values,
        exact={"EQ": True, "lambdaLB": False, "VarQBound": False, "VarPBound": False},
    )


def motif_threshold(params: ProblemParams, motif: BalancedMotif | Hypergraph) -> float:
    moments = exact_moments_motif_stat(params, motif).values
    return 0.5 * (moments["EQ"] + moments["lambdaLB"])


def separation_ratio_exponent(params: ProblemParams, motif: BalancedMotif | Hypergraph) -> Dict[str, float]:
    """Growth exponent of lambda / E_Q[T] and the proof ratios built from the moment bounds."""
    graph = _motif_graph(motif)
    ell, m = len(graph.vertices()), graph.m
    values = exact_moments_motif_stat(params, motif).values
    lam = values["lambdaLB"]
    return {
        "exponent": (params.beta - params.alpha) * m - (1 - params.gamma) * ell,
        "lambda_over_EQ": lam / values["EQ"],
        "VarQBound_over_lambda2": values["VarQBound"] / lam**2,
        "VarPBound_over_lambda2": values["VarPBound"] / lam**2,
    }
