from hyperplant.core.errors import InvalidArgumentError
from hyperplant.core.schemas import MomentSummary, ProblemParams
from hyperplant.core.states import StatisticKind
from hyperplant.hypergraph.structures import AdjacencyTensor


def standardized_edge_values(params: ProblemParams) -> tuple:
    """(value when present, value when absent) of (Y_e - q) / sigma."""
    return (1.0 - params.q) / params.sigma, -params.q / params.sigma


def signed_edge_count(Y: AdjacencyTensor, params: ProblemParams) -> float:
    """Sum of the standardized edge values, (#present - M q) / sigma."""
    if (Y.n, Y.r) != (params.n, params.r):
        raise InvalidArgumentError(f"Tensor shape (n={Y.n}, r={Y.r}) does not match (n={params.n}, r={params.r})")
    return (Y.count() - params.M * params.q) / params.sigma


def exact_moments_edge_stat(params: ProblemParams) -> MomentSummary:
    n, r, M = params.n, params.r, params.M
    p, q, rho, sigma = params.p, params.q, params.rho, params.sigma
    var_p_bound = (
        M
        + 2 * M * rho**r * p / sigma**2
        + 2 * M * r * n ** (r - 1) * rho ** (2 * r - 1) * p**2 / sigma**2
    )
    return MomentSummary(
        statistic=StatisticKind.EDGE,
        values={
            "EQ": 0.0,
            "VarQ": float(M),
            "EP": M * rho**r * (p - q) / sigma,
            "VarPBound": var_p_bound,
        },
        exact={"EQ": True, "VarQ": True, "EP": True, "VarPBound": False},
    )


def edge_threshold(params: ProblemParams) -> float:
    moments = exact_moments_edge_stat(params).values
    return 0.5 * (moments["EQ"] + moments["EP"])
