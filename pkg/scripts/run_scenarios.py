"""
End-to-end acceptance scenarios for the detection lab.

Usage:
  python scripts/run_scenarios.py

Optional:
  - HYPERPLANT_WORKERS in .env or environment (Monte Carlo worker count)
"""

import math
import sys
import tempfile
import time
from pathlib import Path

# Ensure src/ is importable when running as a script
ROOT_DIR = Path(__file__).resolve().parents[1]
SRC_DIR = ROOT_DIR / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

from hyperplant.balanced import find_balanced_motif, is_balanced  # type: ignore  # noqa: E402
from hyperplant.cli import main as cli_main  # type: ignore  # noqa: E402
from hyperplant.config import WORKERS  # type: ignore  # noqa: E402
from hyperplant.core.states import StatisticKind  # type: ignore  # noqa: E402
from hyperplant.ldlr import (  # type: ignore  # noqa: E402
    build_conditioning_spec,
    conditional_ldlr_exact_tiny,
    estimate_event_probability,
    ldlr_norm_bruteforce,
    ldlr_norm_exact,
)
from hyperplant.models import aux_ldlr_upper_bound, derive_params  # type: ignore  # noqa: E402
from hyperplant.stats import estimate_separation  # type: ignore  # noqa: E402

N_TREND = [10**3, 10**4, 10**5, 10**6]


def _timed(tag: str):
    print(f"--- {tag} ---")
    return time.perf_counter()


def _done(tag: str, started: float):
    print(f"✅ {tag} passed in {time.perf_counter() - started:.1f}s.\n")


def run_ldlr_oracles():
    started = _timed("LDLR closed form vs enumeration")
    grid = [(0.2, 0.5, 0.3), (0.5, 0.8, 0.25), (0.3, 0.9, 0.7), (0.1, 0.3, 0.5), (0.4, 0.6, 0.2)]
    for r, n, D in [(2, 5, 3), (3, 5, 2)]:
        for alpha, beta, gamma in grid:
            params = derive_params(n, r, alpha, beta, gamma)
            exact = ldlr_norm_exact(params, D).value - 1
            brute = ldlr_norm_bruteforce(params, D).value - 1
            assert abs(exact - brute) <= 1e-9 * abs(brute), (r, alpha, beta, gamma)
    _done("LDLR oracles", started)


def run_ldlr_trends():
    started = _timed("LDLR trends (beta=0.9, gamma=0.6, D=10)")
    for alpha, label in [(0.8, "hard"), (0.6, "easy")]:
        values = [float(ldlr_norm_exact(derive_params(n, 2, alpha, 0.9, 0.6), 10).value - 1) for n in N_TREND]
        print(f"{label:>5} alpha={alpha}: " + ", ".join(f"{v:.4g}" for v in values))
        pairs = list(zip(values, values[1:]))
        if label == "hard":
            assert all(a > b for a, b in pairs) and values[-1] < 0.01
        else:
            assert all(a < b for a, b in pairs) and values[-1] > 5
    _done("LDLR trends", started)


def run_edge_test():
    started = _timed(f"Edge test separation (200 trials, {WORKERS} workers)")
    previous = 0.0
    for n in (64, 128, 256, 512):
        report, _ = estimate_separation(derive_params(n, 2, 0.3, 0.5, 0.75), StatisticKind.EDGE, 200, seed=1)
        errors = report.type_i_error + report.type_ii_error
        print(f"n={n}: separation={report.separation:.3f} +- {report.separation_se:.3f} errors={errors:.3f}")
        assert report.separation > previous
        previous = report.separation
    assert errors <= 0.05
    _done("Edge test", started)


def run_motif_certification():
    started = _timed("Balanced motif certification")
    grid = [
        (0.3, 0.75, 0.48, 2),
        (0.2, 0.9, 0.3, 2),
        (0.1, 0.5, 0.4, 2),
        (0.22, 0.85, 0.3, 2),
        (0.3, 1.5, 0.4, 3),
        (0.1, 1.0, 0.45, 3),
    ]
    for alpha, beta, gamma, r in grid:
        motif = find_balanced_motif(alpha, beta, gamma, r)
        assert is_balanced(motif.motif)[0]
        print(f"r={r} alpha={alpha} beta={beta} gamma={gamma}: l={motif.ell} m={motif.m} aut={motif.aut_count}")
    _done("Motif certification", started)


def run_conditioning():
    started = _timed("Conditioning event")
    params = derive_params(4, 2, 0.5, 0.8, 0.25)
    spec = build_conditioning_spec(params, 0.1, 3)
    result = conditional_ldlr_exact_tiny(params, spec)
    estimate = estimate_event_probability(params, spec, 4000, seed=13)
    exact = float(result.event_probability)
    print(f"I={spec.index_set} P(E)={exact:.4f} estimate={estimate.probability:.4f} +- {estimate.standard_error:.4f}")
    assert result.good_bound_violations == 0 and result.bad_bound_violations == 0
    assert abs(estimate.probability - exact) <= 4 * estimate.standard_error

    trend = []
    for n in (50, 100, 200):
        big = derive_params(n, 2, 0.2, 0.5, 0.3)
        trend.append(estimate_event_probability(big, build_conditioning_spec(big, 0.1, 10), 2000, seed=5))
    print("P(E) over n=50,100,200: " + ", ".join(f"{e.probability:.4f}" for e in trend))
    assert all(e.probability >= 0.9 for e in trend)
    for a, b in zip(trend, trend[1:]):
        assert b.probability >= a.probability - 4 * math.hypot(a.standard_error, b.standard_error)
    _done("Conditioning", started)


def run_aux_bound():
    started = _timed("Auxiliary model bound")
    params = derive_params(100, 2, 0.6, 0.9, 0.6)
    assert aux_ldlr_upper_bound(params, 0, 1000, seed=0).value == 1.0
    values = [
        aux_ldlr_upper_bound(derive_params(n, 2, 0.6, 0.9, 0.6), 6, 1, seed=0, method="exact").value for n in N_TREND
    ]
    print("bound over n: " + ", ".join(f"{v:.4f}" for v in values))
    assert all(a > b for a, b in zip(values, values[1:]))
    _done("Auxiliary bound", started)


def run_determinism():
    started = _timed("CLI determinism")
    args = ["test", "--n", "48", "--trials", "20", "--seed", "3", "--alpha", "0.3", "--beta", "0.5", "--gamma", "0.75"]
    with tempfile.TemporaryDirectory() as tmp:
        first, second = Path(tmp) / "a.json", Path(tmp) / "b.json"
        assert cli_main([*args, "--out", str(first)]) == 0
        assert cli_main([*args, "--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()
        assert (Path(tmp) / "a.trials.csv").read_bytes() == (Path(tmp) / "b.trials.csv").read_bytes()
    _done("Determinism", started)


def main():
    run_ldlr_oracles()
    run_ldlr_trends()
    run_edge_test()
    run_motif_certification()
    run_conditioning()
    run_aux_bound()
    run_determinism()
    print("🎉 All scenario checks passed.")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
