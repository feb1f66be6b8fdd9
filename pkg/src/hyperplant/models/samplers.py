import logging
import math
from typing import Tuple

import numpy as np

from hyperplant.core.errors import InfeasibleParametersError, InvalidArgumentError
from hyperplant.core.schemas import AuxPlantedParams, PlantedSample, ProblemParams
from hyperplant.core.states import STREAM_TAGS, Model
from hyperplant.hypergraph.structures import AdjacencyTensor, edge_table

logger = logging.getLogger(__name__)


def child_rng(seed: int, model: Model, trial: int = 0) -> np.random.Generator:
    """PCG64 stream keyed by (seed, model tag, trial); the same key always gives the same draws."""
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(STREAM_TAGS[model], trial))
    return np.random.Generator(np.random.PCG64(sequence))


def _memberships(rng: np.random.Generator, params: ProblemParams) -> np.ndarray:
    return rng.random(params.n) < params.rho


def _inside_mask(z: np.ndarray, n: int, r: int) -> np.ndarray:
    """Per edge rank: True when every endpoint lies in Z."""
    table = edge_table(n, r)
    return np.all(z[table - 1], axis=1)


def sample_null(params: ProblemParams, seed: int, trial: int = 0) -> AdjacencyTensor:
    rng = child_rng(seed, Model.NULL, trial)
    bits = rng.random(params.M) < params.q
    return AdjacencyTensor(n=params.n, r=params.r, bits=bits)


def sample_planted(params: ProblemParams, seed: int, trial: int = 0) -> PlantedSample:
    rng = child_rng(seed, Model.PLANTED, trial)
    z = _memberships(rng, params)
    probs = np.where(_inside_mask(z, params.n, params.r), params.p, params.q)
    bits = rng.random(params.M) < probs
    Z = frozenset(int(i) + 1 for i in np.flatnonzero(z))
    return PlantedSample(Z=Z, Y=AdjacencyTensor(n=params.n, r=params.r, bits=bits))


# --- Auxiliary rank-one model ---
def aux_spike(params: ProblemParams) -> float:
    """Spike that makes the planted-planted edge probability exactly p."""
    return params.rho * (params.p - params.q) / (params.sigma * (1.0 - params.rho))


def aux_vector_values(params: ProblemParams) -> Tuple[float, float]:
    """(value for a planted vertex, value for an unplanted vertex); mean 0, variance 1 under Ber(rho)."""
    rho = params.rho
    return math.sqrt((1.0 - rho) / rho), -math.sqrt(rho / (1.0 - rho))


def aux_pair_probabilities(params: ProblemParams, spike: float) -> dict:
    hi, lo = aux_vector_values(params)
    scale = params.sigma * spike
    return {
        "planted-planted": params.q + scale * hi * hi,
        "planted-unplanted": params.q + scale * hi * lo,
        "unplanted-unplanted": params.q + scale * lo * lo,
    }


def check_aux_feasible(params: ProblemParams, spike: float | None = None) -> None:
    if params.r != 2:
        raise InvalidArgumentError(f"The auxiliary model is defined for r=2 only (r={params.r})")
    spike = aux_spike(params) if spike is None else spike
    for pair, prob in aux_pair_probabilities(params, spike).items():
        if not 0.0 <= prob <= 1.0:
            raise InfeasibleParametersError(
                f"{pair} edge probability q + sigma*lambda*u_i*u_j = {prob:.6g} lies outside [0, 1]"
            )


def sample_aux(params: ProblemParams, seed: int, trial: int = 0) -> Tuple[AuxPlantedParams, AdjacencyTensor]:
    spike = aux_spike(params)
    check_aux_feasible(params, spike)

    rng = child_rng(seed, Model.AUX, trial)
    z = _memberships(rng, params)
    hi, lo = aux_vector_values(params)
    u = np.where(z, hi, lo)

    table = edge_table(params.n, params.r)
    probs = params.q + params.sigma * spike * u[table[:, 0] - 1] * u[table[:, 1] - 1]
    bits = rng.random(params.M) < probs

    spike_params = AuxPlantedParams(
        lambda_spike=spike,
        a=math.sqrt((1.0 - params.q) / params.q),
        b=-math.sqrt(params.q / (1.0 - params.q)),
        u=u,
    )
    logger.debug("aux sample n=%d lambda=%.4g planted=%d", params.n, spike, int(z.sum()))
    return spike_params, AdjacencyTensor(n=params.n, r=params.r, bits=bits)
