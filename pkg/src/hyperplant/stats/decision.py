from hyperplant.core.errors import InvalidArgumentError
from hyperplant.core.schemas import BalancedMotif, ProblemParams, RefutationCall, RegimeCall, TestOutcome
from hyperplant.core.states import Decision, Regime, StatisticKind
from hyperplant.hypergraph.structures import AdjacencyTensor
from hyperplant.stats.edge import edge_threshold, signed_edge_count
from hyperplant.stats.motif import count_motif, motif_threshold

BOUNDARY_TOL = 1e-12


def statistic_value(
    Y: AdjacencyTensor, params: ProblemParams, statistic: StatisticKind, motif: BalancedMotif | None = None
) -> float:
    if statistic == StatisticKind.EDGE:
        return signed_edge_count(Y, params)
    if motif is None:
        raise InvalidArgumentError("The motif statistic needs a motif")
    return float(count_motif(Y, motif))


def statistic_threshold(params: ProblemParams, statistic: StatisticKind, motif: BalancedMotif | None = None) -> float:
    """Midpoint of the two analytic means."""
    if statistic == StatisticKind.EDGE:
        return edge_threshold(params)
    if motif is None:
        raise InvalidArgumentError("The motif statistic needs a motif")
    return motif_threshold(params, motif)


def decide(value: float, threshold: float) -> Decision:
    return Decision.PLANTED if value > threshold else Decision.NULL


def threshold_test(
    Y: AdjacencyTensor,
    params: ProblemParams,
    statistic: StatisticKind,
    motif: BalancedMotif | None = None,
    threshold: float | None = None,
) -> TestOutcome:
    value = statistic_value(Y, params, statistic, motif)
    if threshold is None:
        threshold = statistic_threshold(params, statistic, motif)
    return TestOutcome(statistic=statistic, value=value, threshold=threshold, decision=decide(value, threshold))


def _check_exponents(alpha: float, beta: float, gamma: float, r: int) -> None:
    if r < 2:
        raise InvalidArgumentError(f"r >= 2 violated (r={r})")
    if not 0 < alpha < beta < r - 1:
        raise InvalidArgumentError(f"0 < alpha < beta < r-1 violated (alpha={alpha}, beta={beta}, r={r})")
    if not 0 < gamma < 1:
        raise InvalidArgumentError(f"0 < gamma < 1 violated (gamma={gamma})")


def classify_regime(alpha: float, beta: float, gamma: float, r: int) -> RegimeCall:
    """Easy below the detection threshold of the gamma branch, hard above it."""
    _check_exponents(alpha, beta, gamma, r)
    if gamma >= 0.5:
        branch, threshold = "gamma>=1/2", beta / 2 + r * (gamma - 0.5)
    else:
        branch, threshold = "gamma<1/2", beta * gamma

    if abs(alpha - threshold) <= BOUNDARY_TOL:
        regime = Regime.BOUNDARY
    elif alpha < threshold:
        regime = Regime.EASY
    else:
        regime = Regime.HARD
    return RegimeCall(regime=regime, branch=branch, threshold=threshold)


def classify_refutation(alpha: float, beta: float, gamma: float) -> RefutationCall:
    """Graphs with gamma > 1/2: the auxiliary model is low-degree hard above beta/2 + gamma - 1/2
    while detection stays easy below beta/2 + 2(gamma - 1/2)."""
    _check_exponents(alpha, beta, gamma, 2)
    if not gamma > 0.5:
        raise InvalidArgumentError(f"gamma > 1/2 violated (gamma={gamma})")
    aux_threshold = beta / 2 + gamma - 0.5
    detection_threshold = beta / 2 + 2 * (gamma - 0.5)
    return RefutationCall(
        in_gap=aux_threshold < alpha < detection_threshold,
        aux_threshold=aux_threshold,
        detection_threshold=detection_threshold,
    )
