"""Command-line front end: sampling, tests, LDLR tables, motif search and phase diagrams."""

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List

from dotenv import dotenv_values
from pydantic import ValidationError

from hyperplant.balanced.density import is_balanced
from hyperplant.balanced.search import automorphism_count, find_balanced_motif
from hyperplant.config import LOG_LEVEL
from hyperplant.core.errors import HyperplantError, InvalidArgumentError
from hyperplant.core.schemas import PHASE_COLUMNS, BalancedMotif, ExperimentConfig, ProblemParams
from hyperplant.core.states import Model, OutputFormat, StatisticKind
from hyperplant.engine.sweep import run_phase_diagram
from hyperplant.hypergraph.structures import AdjacencyTensor
from hyperplant.hypergraph.textio import format_hypergraph, parse_hypergraph
from hyperplant.ldlr.conditioning import (
    build_conditioning_spec,
    conditional_ldlr_exact_tiny,
    estimate_event_probability,
)
from hyperplant.ldlr.norms import ldlr_norm_bruteforce, ldlr_norm_exact
from hyperplant.models.aux import aux_ldlr_upper_bound
from hyperplant.models.params import derive_params
from hyperplant.models.samplers import sample_aux, sample_null, sample_planted
from hyperplant.stats.decision import threshold_test
from hyperplant.stats.separation import estimate_separation
from hyperplant.storage.repository import ResultRepo

logger = logging.getLogger("hyperplant.cli")

TRIAL_COLUMNS = ["trial", "model", "statistic", "decision"]
LDLR_COLUMNS = ["ell", "m", "classCount_log10", "term_log10"]

# Flags that a --config file may also set
CONFIG_KEYS = set(ExperimentConfig.model_fields)


# --- Configuration ---
def _read_config_file(path: str | None) -> Dict[str, Any]:
    if not path:
        return {}
    if not Path(path).exists():
        raise InvalidArgumentError(f"Config file not found: {path}")
    values = {}
    for key, value in dotenv_values(path).items():
        name = key.strip().lower().replace("-", "_")
        if name not in CONFIG_KEYS:
            raise InvalidArgumentError(f"Unknown config key {key!r} in {path}")
        if value is not None and value != "":
            values[name] = value
    return values


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    """Defaults, then the --config file, then explicit flags."""
    merged = _read_config_file(getattr(args, "config", None))
    for name in CONFIG_KEYS:
        value = getattr(args, name, None)
        if value is not None:
            merged[name] = value
    try:
        return ExperimentConfig(**merged)
    except ValidationError as e:
        raise InvalidArgumentError(e.errors()[0].get("msg", str(e))) from e


def _require(cfg: ExperimentConfig, *names: str) -> None:
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(cfg, name) in (None, [])]
    if missing:
        raise InvalidArgumentError(f"Missing required option(s): {', '.join(missing)}")


def _params(cfg: ExperimentConfig, relaxed: bool = False, n: int | None = None, r: int | None = None) -> ProblemParams:
    _require(cfg, "alpha", "beta", "gamma")
    if n is None:
        _require(cfg, "n")
    return derive_params(n or cfg.n, r or cfg.r, cfg.alpha, cfg.beta, cfg.gamma, relaxed=relaxed)


def _motif_doc(motif: BalancedMotif) -> Dict[str, Any]:
    return {
        "ell": motif.ell,
        "m": motif.m,
        "motif_text": format_hypergraph(motif.motif),
        "certificate": motif.certificate_json(),
    }


def _load_motif(path: str) -> BalancedMotif:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        graph, _ = parse_hypergraph(doc["motif_text"])
    except (OSError, KeyError, json.JSONDecodeError) as e:
        raise InvalidArgumentError(f"Cannot read motif file {path}: {e}") from e
    balanced, certificate = is_balanced(graph)
    if not balanced:
        raise InvalidArgumentError(f"Motif in {path} is not balanced")
    aut = automorphism_count(graph)
    recorded = doc.get("certificate", {}).get("autCount")
    if recorded is not None and recorded != aut:
        raise InvalidArgumentError(f"Motif file records autCount={recorded}, recomputed {aut}")
    ell = len(graph.vertices())
    return BalancedMotif(
        motif=graph, ell=ell, m=graph.m, ratio=Fraction(graph.m, ell), aut_count=aut, certificate=certificate
    )


# --- Commands ---
def cmd_sample(cfg: ExperimentConfig, model: Model) -> None:
    params = _params(cfg, relaxed=model == Model.AUX)
    headers: Dict[str, str] = {}
    extra: Dict[str, Any] = {}
    if model == Model.NULL:
        Y = sample_null(params, cfg.seed)
    elif model == Model.PLANTED:
        sample = sample_planted(params, cfg.seed)
        Y = sample.Y
        headers["Z"] = " ".join(str(v) for v in sorted(sample.Z))
        extra["Z"] = sorted(sample.Z)
    else:
        spike, Y = sample_aux(params, cfg.seed)
        signs = spike.signs()
        headers["u-signs"] = " ".join(f"{s:+d}" for s in signs)
        extra.update(u_signs=signs, lambda_spike=spike.lambda_spike)

    graph = Y.to_hypergraph()
    repo = ResultRepo(cfg.out)
    if cfg.format == OutputFormat.JSON:
        repo.save({"n": graph.n, "r": graph.r, "edges": [list(e) for e in graph.sorted_edges()], **extra})
    elif cfg.format is None:
        repo.write_text(format_hypergraph(graph, headers))
    else:
        raise InvalidArgumentError("sample writes the hypergraph text format or --format json")


def cmd_test(cfg: ExperimentConfig, stat: StatisticKind, input_path: str | None, motif_path: str | None) -> None:
    motif = None
    if stat == StatisticKind.MOTIF:
        if motif_path:
            motif = _load_motif(motif_path)
        else:
            _require(cfg, "alpha", "beta", "gamma")
            motif = find_balanced_motif(cfg.alpha, cfg.beta, cfg.gamma, cfg.r)

    repo = ResultRepo(cfg.out)
    if input_path:
        try:
            graph, _ = parse_hypergraph(Path(input_path).read_text(encoding="utf-8"))
        except OSError as e:
            raise InvalidArgumentError(f"Cannot read {input_path}: {e}") from e
        params = _params(cfg, n=graph.n, r=graph.r)
        outcome = threshold_test(AdjacencyTensor.from_hypergraph(graph), params, stat, motif)
        doc = outcome.model_dump(mode="json")
        if motif is not None:
            doc["motif"] = _motif_doc(motif)
        repo.save(doc)
        return

    if cfg.trials < 2:
        raise InvalidArgumentError("test needs --input or --trials >= 2")
    params = _params(cfg)
    report, records = estimate_separation(params, stat, cfg.trials, cfg.seed, motif=motif)
    rows = [[rec.trial, rec.model.value, repr(rec.statistic), rec.decision.value] for rec in records]
    if cfg.format == OutputFormat.CSV:
        repo.write_csv(TRIAL_COLUMNS, rows)
        return
    doc = report.model_dump(mode="json")
    if motif is not None:
        doc["motif"] = _motif_doc(motif)
    repo.save(doc)
    if repo.file_path is not None:
        repo.sibling(".trials.csv").write_csv(TRIAL_COLUMNS, rows)


def cmd_phase_diagram(cfg: ExperimentConfig) -> None:
    _require(cfg, "beta", "alpha_grid", "gamma_grid", "n_grid")
    cells = run_phase_diagram(
        cfg.beta, cfg.r, cfg.alpha_grid, cfg.gamma_grid, cfg.n_grid, cfg.degree, cfg.trials, cfg.seed
    )
    repo = ResultRepo(cfg.out)
    if cfg.format == OutputFormat.JSON:
        repo.save({"beta": cfg.beta, "r": cfg.r, "D": cfg.degree, "cells": [c.model_dump(mode="json") for c in cells]})
    else:
        repo.write_csv(PHASE_COLUMNS, [c.csv_row() for c in cells])


def cmd_ldlr(cfg: ExperimentConfig, mode: str) -> None:
    if mode == "conditional" and cfg.delta is None:
        raise InvalidArgumentError("delta required")
    params = _params(cfg)
    doc: Dict[str, Any] = {"params": params.model_dump(mode="json")}
    if mode == "exact":
        result = ldlr_norm_exact(params, cfg.degree)
    elif mode == "bruteforce":
        result = ldlr_norm_bruteforce(params, cfg.degree)
    else:
        spec = build_conditioning_spec(params, cfg.delta, cfg.degree)
        result = conditional_ldlr_exact_tiny(params, spec)
        doc["conditioning"] = spec.model_dump(mode="json")

    rows = [[t.ell, t.m, repr(t.log10_class_count), repr(t.log10_term)] for t in result.per_class_terms]
    repo = ResultRepo(cfg.out)
    if cfg.format == OutputFormat.CSV:
        repo.write_csv(LDLR_COLUMNS, rows)
        return
    doc["result"] = result.model_dump(mode="json")
    doc["table"] = [dict(zip(LDLR_COLUMNS, row)) for row in rows]
    repo.save(doc)


def cmd_find_balanced(cfg: ExperimentConfig) -> None:
    _require(cfg, "alpha", "beta", "gamma")
    motif = find_balanced_motif(cfg.alpha, cfg.beta, cfg.gamma, cfg.r)
    ResultRepo(cfg.out).save(_motif_doc(motif))


def cmd_aux_bound(cfg: ExperimentConfig, method: str) -> None:
    params = _params(cfg, relaxed=True)
    trials = max(cfg.trials, 1) if method == "montecarlo" else 1
    result = aux_ldlr_upper_bound(params, cfg.degree, trials, cfg.seed, method=method)
    ResultRepo(cfg.out).save({"params": params.model_dump(mode="json"), "result": result.model_dump(mode="json")})


def cmd_event_probability(cfg: ExperimentConfig) -> None:
    if cfg.delta is None:
        raise InvalidArgumentError("delta required")
    params = _params(cfg)
    spec = build_conditioning_spec(params, cfg.delta, cfg.degree)
    estimate = estimate_event_probability(params, spec, max(cfg.trials, 1), cfg.seed)
    ResultRepo(cfg.out).save({"conditioning": spec.model_dump(mode="json"), "estimate": estimate.model_dump()})


# --- Parser ---
def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--delta", type=float)
    p.add_argument("--out")
    p.add_argument("--format", choices=[f.value for f in OutputFormat])
    p.add_argument("--config", help="key=value file; flags override its values")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperplant", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw from the null, planted or auxiliary model")
    p.add_argument("--model", choices=[m.value for m in Model], default=Model.NULL.value)
    _add_common(p)

    p = sub.add_parser("test", help="threshold test on a file, or a Monte Carlo separation run")
    p.add_argument("--stat", choices=[s.value for s in StatisticKind], default=StatisticKind.EDGE.value)
    p.add_argument("--input")
    p.add_argument("--motif", help="motif JSON written by find-balanced")
    _add_common(p)

    p = sub.add_parser("phase-diagram", help="regime, LDLR and separation over an (alpha, gamma, n) grid")
    p.add_argument("--alpha-grid", dest="alpha_grid")
    p.add_argument("--gamma-grid", dest="gamma_grid")
    p.add_argument("--n-grid", dest="n_grid")
    _add_common(p)

    p = sub.add_parser("ldlr", help="squared norm of the degree-D likelihood ratio")
    p.add_argument("--mode", choices=["exact", "bruteforce", "conditional"], default="exact")
    _add_common(p)

    p = sub.add_parser("find-balanced", help="balanced motif for the motif test")
    _add_common(p)

    p = sub.add_parser("aux-bound", help="moment-series bound for the auxiliary model")
    p.add_argument("--method", choices=["montecarlo", "exact"], default="montecarlo")
    _add_common(p)

    p = sub.add_parser("event-probability", help="Monte Carlo P(E) for the conditioning event")
    _add_common(p)
    return parser


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else getattr(logging, LOG_LEVEL, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv: List[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        cfg = load_config(args)
        if args.command == "sample":
            cmd_sample(cfg, Model(args.model))
        elif args.command == "test":
            cmd_test(cfg, StatisticKind(args.stat), args.input, args.motif)
        elif args.command == "phase-diagram":
            cmd_phase_diagram(cfg)
        elif args.command == "ldlr":
            cmd_ldlr(cfg, args.mode)
        elif args.command == "find-balanced":
            cmd_find_balanced(cfg)
        elif args.command == "aux-bound":
            cmd_aux_bound(cfg, args.method)
        elif args.command == "event-probability":
            cmd_event_probability(cfg)
    except HyperplantError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
