import math
from fractions import Fraction
from typing import Any, Dict, FrozenSet, List, Tuple

import mpmath
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

from hyperplant.core.states import CellStatus, Decision, LdlrMethod, Model, OutputFormat, Regime, StatisticKind
from hyperplant.hypergraph.structures import AdjacencyTensor, Hypergraph


def fraction_str(value: Fraction | None) -> str | None:
    return None if value is None else f"{value.numerator}/{value.denominator}"


def mp_str(value: Any) -> str | None:
    return None if value is None else mpmath.nstr(value, 25)


# --- Parameters ---
class ProblemParams(BaseModel):
    """(n, r, alpha, beta, gamma) with derived p, q, rho, sigma and M."""

    model_config = ConfigDict(frozen=True)

    n: int
    r: int
    alpha: float
    beta: float
    gamma: float
    # Skips the alpha < beta check (auxiliary-model studies only)
    relaxed: bool = False

    p: float = 0.0
    q: float = 0.0
    rho: float = 0.0
    sigma: float = 0.0
    M: int = 0

    @model_validator(mode="before")
    @classmethod
    def _derive(cls, data: Any):
        if not isinstance(data, dict):
            return data
        data = dict(data)
        missing = [k for k in ("n", "r", "alpha", "beta", "gamma") if data.get(k) is None]
        if missing:
            raise ValueError(f"missing parameters: {', '.join(missing)}")
        n, r = int(data.get("n")), int(data.get("r"))
        alpha, beta, gamma = float(data.get("alpha")), float(data.get("beta")), float(data.get("gamma"))
        relaxed = bool(data.get("relaxed", False))

        if r < 2:
            raise ValueError(f"r >= 2 violated (r={r})")
        if n < r:
            raise ValueError(f"n >= r violated (n={n}, r={r})")
        if not alpha > 0:
            raise ValueError(f"0 < alpha violated (alpha={alpha})")
        if not relaxed and not alpha < beta:
            raise ValueError(f"alpha < beta violated (alpha={alpha}, beta={beta})")
        if not 0 < beta < r - 1:
            raise ValueError(f"0 < beta < r-1 violated (beta={beta}, r={r})")
        if not 0 < gamma < 1:
            raise ValueError(f"0 < gamma < 1 violated (gamma={gamma})")

        log_n = math.log(n)
        q = math.exp(-beta * log_n)
        data.update(
            p=math.exp(-alpha * log_n),
            q=q,
            rho=math.exp((gamma - 1.0) * log_n),
            sigma=math.sqrt(q * (1.0 - q)),
            M=math.comb(n, r),
        )
        return data

    @model_validator(mode="after")
    def _check_rates(self):
        if not 0 < self.q < 1 or not 0 < self.p < 1:
            raise ValueError(f"0 < q, p < 1 violated (p={self.p}, q={self.q})")
        if not self.relaxed and not self.q < self.p:
            raise ValueError(f"q < p violated (p={self.p}, q={self.q})")
        if not 0 < self.rho < 1:
            raise ValueError(f"0 < rho < 1 violated (rho={self.rho})")
        return self

    def exact_rates(self) -> Tuple[Fraction, Fraction, Fraction]:
        """p, q, rho as the exact rationals their floats represent."""
        return Fraction(self.p), Fraction(self.q), Fraction(self.rho)

    def with_rates(self, **rates: float) -> "ProblemParams":
        """Copy with p/q/rho/sigma replaced, skipping validation (degenerate test hooks)."""
        updated = self.model_copy(update=rates)
        if "q" in rates and "sigma" not in rates:
            updated = updated.model_copy(update={"sigma": math.sqrt(updated.q * (1.0 - updated.q))})
        return updated


# --- Samples ---
class PlantedSample(BaseModel):
    model_config = ConfigDict(frozen=True)

    Z: FrozenSet[int]
    Y: AdjacencyTensor

    @model_validator(mode="after")
    def _check_members(self):
        if any(not 1 <= v <= self.Y.n for v in self.Z):
            raise ValueError(f"Z holds a vertex outside [1, {self.Y.n}]")
        return self


class AuxPlantedParams(BaseModel):
    """Rank-one spike of the auxiliary planted model (graphs only)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lambda_spike: float
    a: float
    b: float
    u: np.ndarray

    @field_serializer("u")
    def _serialize_u(self, u: np.ndarray):
        return [float(x) for x in u]

    def signs(self) -> List[int]:
        return [1 if x > 0 else -1 for x in self.u]


# --- Balanced motifs ---
class DensityCertificate(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    max_sub_density: Fraction
    witness: FrozenSet[int]
    balanced: bool

    @field_serializer("max_sub_density")
    def _serialize_ratio(self, value: Fraction):
        return fraction_str(value)

    @field_serializer("witness")
    def _serialize_witness(self, value: FrozenSet[int]):
        return sorted(value)


class BalancedMotif(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    motif: Hypergraph
    ell: int
    m: int
    ratio: Fraction
    aut_count: int
    certificate: DensityCertificate

    @model_validator(mode="after")
    def _check(self):
        if self.ratio != Fraction(self.m, self.ell):
            raise ValueError("ratio must equal m / l")
        if self.certificate.max_sub_density > self.ratio:
            raise ValueError("certificate max sub-density exceeds the motif ratio")
        if math.factorial(self.ell) % self.aut_count:
            raise ValueError("automorphism count must divide l!")
        return self

    @field_serializer("ratio")
    def _serialize_ratio(self, value: Fraction):
        return fraction_str(value)

    def certificate_json(self) -> Dict[str, Any]:
        return {
            "ratio": fraction_str(self.ratio),
            "maxSubDensity": fraction_str(self.certificate.max_sub_density),
            "witness": sorted(self.certificate.witness),
            "autCount": self.aut_count,
        }


# --- Low-degree likelihood ratio ---
class ConditioningSpec(BaseModel):
    """Parameters of the event E: delta, degree cap D, m_l table and index set I."""

    model_config = ConfigDict(frozen=True)

    r: int
    delta: float
    D: int
    m_table: Dict[int, int]
    index_set: List[Tuple[int, int]] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_table(self):
        if not self.delta > 0:
            raise ValueError(f"delta > 0 violated (delta={self.delta})")
        ells = sorted(self.m_table)
        if any(self.m_table[b] < self.m_table[a] for a, b in zip(ells, ells[1:])):
            raise ValueError("m_l must be nondecreasing in l")
        for ell, m in self.index_set:
            if not self.m_table.get(ell, self.D + 1) <= m <= self.D:
                raise ValueError(f"({ell}, {m}) in I violates m_l <= m <= D")
        return self

    def is_dense(self, ell: int, m: int) -> bool:
        return (ell, m) in set(self.index_set)


class ClassTerm(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ell: int
    m: int
    class_count: int
    term: Any  # mpmath.mpf

    @property
    def log10_class_count(self) -> float:
        return float(mpmath.log10(self.class_count)) if self.class_count > 0 else float("-inf")

    @property
    def log10_term(self) -> float:
        return float(mpmath.log10(self.term)) if self.term > 0 else float("-inf")

    @field_serializer("term")
    def _serialize_term(self, value):
        return mp_str(value)

    @field_serializer("class_count")
    def _serialize_count(self, value: int):
        return str(value)


class LdlrResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    method: LdlrMethod
    D: int
    value: Any  # mpmath.mpf
    per_class_terms: List[ClassTerm] = Field(default_factory=list)
    exact_value: Fraction | None = None
    event_probability: Fraction | None = None
    good_sum: Fraction | None = None
    bad_sum: Fraction | None = None
    good_bound_violations: int = 0
    bad_bound_violations: int = 0

    @field_serializer("value")
    def _serialize_value(self, value):
        return mp_str(value)

    @field_serializer("exact_value", "event_probability", "good_sum", "bad_sum")
    def _serialize_fraction(self, value: Fraction | None):
        return fraction_str(value)

    @property
    def value_minus_one(self):
        return self.value - 1


class AuxBoundTerm(BaseModel):
    model_config = ConfigDict(frozen=True)

    d: int
    moment: float  # E<u,v>^{2d}
    moment_se: float
    term: float  # lambda^{2d}/d! * moment
    term_se: float
    analytic_moment_bound: float


class AuxBoundResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    method: str
    lambda_spike: float
    value: float
    value_se: float
    terms: List[AuxBoundTerm]


# --- Statistics ---
class MomentSummary(BaseModel):
    """Analytic moments of a statistic; `exact` names the entries that are exact values."""

    model_config = ConfigDict(frozen=True)

    statistic: StatisticKind
    values: Dict[str, float]
    exact: Dict[str, bool]


class TestOutcome(BaseModel):
    model_config = ConfigDict(frozen=True)

    statistic: StatisticKind
    value: float
    threshold: float
    decision: Decision


class TrialRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    trial: int
    model: Model
    statistic: float
    decision: Decision


class SeparationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    statistic: StatisticKind
    params: ProblemParams
    trials: int
    seed: int
    threshold: float
    mean_null: float
    mean_null_se: float
    mean_planted: float
    mean_planted_se: float
    var_null: float
    var_null_se: float
    var_planted: float
    var_planted_se: float
    separation: float
    separation_se: float
    type_i_error: float
    type_ii_error: float

    @model_validator(mode="after")
    def _check(self):
        if self.separation < 0:
            raise ValueError("separation must be nonnegative")
        if not (0 <= self.type_i_error <= 1 and 0 <= self.type_ii_error <= 1):
            raise ValueError("error rates must lie in [0, 1]")
        return self


class EventEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    probability: float
    standard_error: float
    trials: int
    failure_union_bound: float


class RegimeCall(BaseModel):
    model_config = ConfigDict(frozen=True)

    regime: Regime
    branch: str
    threshold: float


# --- Exact oracles ---
class ExactOutcome(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    Z: FrozenSet[int]
    Y: AdjacencyTensor
    probability: Fraction


class ExactDistribution(BaseModel):
    """Every (Z, Y) outcome of a tiny instance with its exact probability."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    r: int
    outcomes: List[ExactOutcome]

    @model_validator(mode="after")
    def _check_mass(self):
        total = sum(o.probability for o in self.outcomes)
        if abs(float(total) - 1.0) > 1e-12:
            raise ValueError(f"Outcome probabilities sum to {float(total)}, expected 1")
        return self

    def expectation(self, f) -> Fraction:
        return sum((o.probability * f(o.Z, o.Y) for o in self.outcomes), Fraction(0))

    def edge_marginal(self, index: int) -> Fraction:
        return sum((o.probability for o in self.outcomes if o.Y.bits[index]), Fraction(0))


class RefutationCall(BaseModel):
    """Where alpha sits against the auxiliary-model and detection thresholds (graphs, gamma > 1/2)."""

    model_config = ConfigDict(frozen=True)

    in_gap: bool
    aux_threshold: float
    detection_threshold: float


# --- Experiments ---
class ExperimentConfig(BaseModel):
    """Merged settings of one CLI command (flags over config file over defaults)."""

    model_config = ConfigDict(frozen=True)

    n: int | None = None
    r: int = 2
    alpha: float | None = None
    beta: float | None = None
    gamma: float | None = None
    seed: int = 0
    trials: int = 0
    degree: int = 10
    delta: float | None = None
    out: str | None = None
    format: OutputFormat | None = None
    alpha_grid: List[float] = Field(default_factory=list)
    gamma_grid: List[float] = Field(default_factory=list)
    n_grid: List[int] = Field(default_factory=list)

    @field_validator("alpha_grid", "gamma_grid", "n_grid", mode="before")
    @classmethod
    def _split_grid(cls, value):
        if isinstance(value, str):
            return [tok for tok in value.replace(" ", "").split(",") if tok]
        return value

    @model_validator(mode="after")
    def _check(self):
        if self.trials < 0:
            raise ValueError(f"trials >= 0 violated (trials={self.trials})")
        if self.degree < 0:
            raise ValueError(f"degree >= 0 violated (degree={self.degree})")
        if self.delta is not None and not self.delta > 0:
            raise ValueError(f"delta > 0 violated (delta={self.delta})")
        return self


PHASE_COLUMNS = ["alpha", "gamma", "n", "regime", "ldlr_minus_1", "separation", "sep_se"]


class PhaseCell(BaseModel):
    """One phase-diagram row; `regime` is "invalid" when the cell violates the parameter constraints."""

    model_config = ConfigDict(frozen=True)

    alpha: float
    gamma: float
    n: int
    status: CellStatus
    regime: str
    ldlr_minus_1: str | None = None
    separation: float | None = None
    sep_se: float | None = None
    message: str | None = None

    def csv_row(self) -> List[str]:
        def cell(value):
            return "" if value is None else str(value)

        return [cell(getattr(self, column)) for column in PHASE_COLUMNS]
