"""Command-line driver: snapshot generation, solving, alpha sweeps, benchmarks,
and verification of fairness / provider-constraint / submodularity checks.

Exit codes: 0 success, 2 usage, 3 validation or configuration,
4 I/O, 5 verification failure. Set ``FAIRCOVER_LOG`` to debug/info/warning/
error to control log verbosity.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import statistics
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .core import (
    AuxMode,
    BuyerQuery,
    Catalog,
    COMPOSITE_ATTRIBUTES,
    ConfigurationError,
    FaircoverError,
    ObjectiveSpec,
    ValidationError,
    compute_fairness_profile,
    coverage_value,
)
from .dataio import (
    GeneratorConfig,
    SweepRecord,
    SweepReport,
    generate_instance,
    load_snapshot,
    read_sweep_details,
    save_snapshot,
    write_sweep_report,
)
from .solvers import (
    SolverKind,
    check_solver_compatibility,
    solve_batch,
)

logger = logging.getLogger("faircover.cli")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_IO = 4
EXIT_VERIFICATION = 5

DEFAULT_CHECKS = ("fairness", "provider")
KNOWN_CHECKS = ("fairness", "provider", "submodularity")
SUBMODULARITY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class CliConfig:
    """Validated flag values for one invocation."""

    subcommand: str
    input: Path | None = None
    output: Path | None = None
    format: str = "csv"
    solver: SolverKind | None = None
    alpha_grid: tuple[float, ...] = ()
    k: int = 20
    aux: str = "none"
    beta: tuple[tuple[str, float], ...] = ()
    epsilon: float = 0.1
    seed: int = 0
    sample: int | None = None
    parallelism: int = 1
    aux_scale: float = 1.0
    # gen
    n_items: int = 2000
    m_buyers: int = 200
    t_stakeholders: int = 5
    membership_probs: tuple[float, ...] | None = None
    multi_membership: bool = True
    candidate_fraction: tuple[float, float] = (0.05, 0.15)
    utility_dist: tuple = ("uniform", 0.05, 1.0)
    cost_dist: tuple = ("lognormal", 12.5, 0.5)
    # bench
    trials: int = 3
    # verify
    report: Path | None = None
    checks: tuple[str, ...] = DEFAULT_CHECKS
    triples: int = 10000


def _parse_float_list(text: str, flag: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip() != "")
    except ValueError:
        raise ValidationError(f"{flag}: cannot parse {text!r} as a comma-separated float list")
    if not values:
        raise ValidationError(f"{flag}: needs at least one value")
    return values


def _parse_beta(text: str) -> tuple[tuple[str, float], ...]:
    pairs = []
    for part in text.split(","):
        if not part.strip():
            continue
        if "=" not in part:
            raise ValidationError(f"--beta: expected name=weight, got {part!r}")
        name, _, weight = part.partition("=")
        try:
            pairs.append((name.strip(), float(weight)))
        except ValueError:
            raise ValidationError(f"--beta: bad weight in {part!r}") from None
    if not pairs:
        raise ValidationError("--beta: needs at least one name=weight pair")
    return tuple(pairs)


def _parse_distribution(text: str, flag: str) -> tuple:
    kind, _, params = text.partition(":")
    if not params:
        raise ValidationError(f"{flag}: expected kind:param[,param], got {text!r}")
    return (kind.strip(), *_parse_float_list(params, flag))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="faircover",
        description="Fair multistakeholder coverage for top-k re-ranking.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_io(p: argparse.ArgumentParser, need_input: bool, need_output: bool) -> None:
        if need_input:
            p.add_argument("--input", required=True, help="snapshot directory (CSV) or .json file")
        p.add_argument("--output", required=need_output, help="output path")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    def add_objective(p: argparse.ArgumentParser, alpha_required: bool) -> None:
        p.add_argument("--alpha", required=alpha_required, default=None,
                       help="trade-off weight(s) in [0,1], comma-separated for sweeps")
        p.add_argument("--k", type=int, default=20, help="recommendations per buyer")
        p.add_argument(
            "--aux",
            choices=("utility-max", "cost-per-utility-min", "none", "composite"),
            default="none",
        )
        p.add_argument("--beta", default=None, help="composite weights, e.g. utility=1.0,neg_cost=0.2")
        p.add_argument("--epsilon", type=float, default=0.1, help="error parameter of the sampled solver")
        p.add_argument("--aux-scale", type=float, default=1.0,
                       help="rescale reported auxiliary values (report-time only)")

    def add_run(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--sample", type=int, default=None,
                       help="solve a uniform random subsample of this many sessions")
        p.add_argument("--parallelism", type=int, default=1)

    p_gen = sub.add_parser("gen", help="generate a synthetic snapshot")
    add_io(p_gen, need_input=False, need_output=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--n-items", type=int, default=2000)
    p_gen.add_argument("--m-buyers", type=int, default=200)
    p_gen.add_argument("--t", type=int, default=5, dest="t_stakeholders")
    p_gen.add_argument("--membership-probs", default=None)
    p_gen.add_argument("--single-membership", action="store_true",
                       help="one categorical membership per item instead of independent draws")
    p_gen.add_argument("--candidate-fraction", default="0.05,0.15")
    p_gen.add_argument("--utility-dist", default="uniform:0.05,1.0")
    p_gen.add_argument("--cost-dist", default="lognormal:12.5,0.5")

    p_solve = sub.add_parser("solve", help="solve every buyer at one alpha")
    add_io(p_solve, need_input=True, need_output=True)
    p_solve.add_argument("--solver", required=True, choices=[s.value for s in SolverKind])
    add_objective(p_solve, alpha_required=True)
    add_run(p_solve)

    p_sweep = sub.add_parser("sweep", help="solve every buyer across an alpha grid")
    add_io(p_sweep, need_input=True, need_output=True)
    p_sweep.add_argument("--solver", required=True, choices=[s.value for s in SolverKind])
    add_objective(p_sweep, alpha_required=True)
    add_run(p_sweep)

    p_bench = sub.add_parser("bench", help="compare solver runtimes and oracle calls")
    add_io(p_bench, need_input=True, need_output=False)
    p_bench.add_argument("--alpha", default="0.5")
    p_bench.add_argument("--k", type=int, default=20)
    p_bench.add_argument("--epsilon", type=float, default=0.1)
    p_bench.add_argument("--trials", type=int, default=3)
    add_run(p_bench)

    p_verify = sub.add_parser("verify", help="check fairness, provider constraint, submodularity")
    add_io(p_verify, need_input=True, need_output=False)
    p_verify.add_argument("--report", default=None, help="previously written sweep/solve report")
    p_verify.add_argument("--solver", default=None, choices=[s.value for s in SolverKind])
    add_objective(p_verify, alpha_required=False)
    add_run(p_verify)
    p_verify.add_argument("--checks", default=",".join(DEFAULT_CHECKS),
                          help="comma-separated subset of fairness,provider,submodularity")
    p_verify.add_argument("--triples", type=int, default=10000,
                          help="sampled (A, B, e) triples for the submodularity check")

    return parser


def config_from_args(args: argparse.Namespace) -> CliConfig:
    sub = args.subcommand
    fields: dict = {"subcommand": sub, "format": args.format}
    if sub == "gen":
        probs = None
        if args.membership_probs:
            probs = _parse_float_list(args.membership_probs, "--membership-probs")
        fraction = _parse_float_list(args.candidate_fraction, "--candidate-fraction")
        if len(fraction) != 2:
            raise ValidationError("--candidate-fraction: expected low,high")
        fields.update(
            output=Path(args.output),
            seed=args.seed,
            n_items=args.n_items,
            m_buyers=args.m_buyers,
            t_stakeholders=args.t_stakeholders,
            membership_probs=probs,
            multi_membership=not args.single_membership,
            candidate_fraction=(fraction[0], fraction[1]),
            utility_dist=_parse_distribution(args.utility_dist, "--utility-dist"),
            cost_dist=_parse_distribution(args.cost_dist, "--cost-dist"),
        )
        return CliConfig(**fields)

    fields.update(input=Path(args.input))
    if sub in ("solve", "sweep", "verify"):
        if args.alpha is not None:
            alpha_grid = _parse_float_list(args.alpha, "--alpha")
            for a in alpha_grid:
                if not 0.0 <= a <= 1.0:
                    raise ValidationError(f"--alpha: {a} outside [0, 1]")
            fields.update(alpha_grid=alpha_grid)
        fields.update(
            k=args.k,
            aux=args.aux,
            beta=_parse_beta(args.beta) if args.beta else (),
            epsilon=args.epsilon,
            aux_scale=args.aux_scale,
        )
    if sub in ("solve", "sweep", "bench", "verify"):
        fields.update(seed=args.seed, sample=args.sample, parallelism=args.parallelism)
        if args.parallelism < 1:
            raise ValidationError("--parallelism must be positive")
        if args.sample is not None and args.sample < 1:
            raise ValidationError("--sample must be positive")
    if sub in ("solve", "sweep"):
        if sub == "solve" and len(fields["alpha_grid"]) != 1:
            raise ValidationError("solve takes exactly one --alpha; use sweep for grids")
        fields.update(output=Path(args.output), solver=SolverKind(args.solver))
    if sub == "bench":
        alpha_grid = _parse_float_list(args.alpha, "--alpha")
        if len(alpha_grid) != 1 or not 0.0 <= alpha_grid[0] <= 1.0:
            raise ValidationError("bench takes exactly one --alpha in [0, 1]")
        if args.trials < 1:
            raise ValidationError("--trials must be positive")
        fields.update(alpha_grid=alpha_grid, k=args.k, epsilon=args.epsilon, trials=args.trials,
                      output=Path(args.output) if args.output else None)
    if sub == "verify":
        checks = tuple(c.strip() for c in args.checks.split(",") if c.strip())
        unknown = [c for c in checks if c not in KNOWN_CHECKS]
        if unknown:
            raise ValidationError(f"--checks: unknown check(s) {unknown}; known: {KNOWN_CHECKS}")
        if not checks:
            raise ValidationError("--checks: needs at least one check")
        report = Path(args.report) if args.report else None
        solver = SolverKind(args.solver) if args.solver else None
        if report is not None and solver is not None:
            raise ValidationError("verify takes either --report or --solver, not both")
        if report is None and solver is None and set(checks) - {"submodularity"}:
            raise ValidationError(
                "fairness/provider checks need --report (verify a prior run) or "
                "--solver (run-and-verify)"
            )
        if solver is not None and args.alpha is None:
            raise ValidationError("run-and-verify needs --alpha")
        fields.update(
            solver=solver,
            report=report,
            checks=checks,
            triples=args.triples,
            output=Path(args.output) if args.output else None,
        )
    return CliConfig(**fields)


def _resolve_aux_mode(
    cfg: CliConfig, catalog: Catalog, queries: list[BuyerQuery]
) -> tuple[AuxMode, tuple[tuple[str, float], ...]]:
    if cfg.aux == "utility-max":
        return AuxMode.UTILITY_MAX, ()
    if cfg.aux == "cost-per-utility-min":
        return AuxMode.COST_PER_UTILITY_MIN, ()
    if cfg.aux == "none":
        return AuxMode.NONE, ()
    if not cfg.beta:
        raise ValidationError("--aux composite requires --beta")
    for name, _ in cfg.beta:
        if name not in COMPOSITE_ATTRIBUTES:
            raise ValidationError(
                f"--beta: unknown attribute {name!r} (known: {', '.join(sorted(COMPOSITE_ATTRIBUTES))})"
            )
    has_positive = has_negative = False
    for query in queries:
        for item, utility in query.candidates:
            cost = catalog.items[item].cost
            v = sum(w * COMPOSITE_ATTRIBUTES[name](cost, utility) for name, w in cfg.beta)
            has_positive = has_positive or v > 0.0
            has_negative = has_negative or v < 0.0
    if has_positive and has_negative:
        raise ValidationError(
            "sign of composite auxiliary cannot be verified in advance: "
            "per-item values are mixed-sign"
        )
    return (AuxMode.COMPOSITE_MIN if has_negative else AuxMode.COMPOSITE_MAX), cfg.beta


def _subsample(queries: list[BuyerQuery], sample: int | None, seed: int) -> list[BuyerQuery]:
    if sample is None or sample >= len(queries):
        return queries
    rng = np.random.default_rng(seed)
    picked = sorted(rng.choice(len(queries), size=sample, replace=False).tolist())
    return [queries[i] for i in picked]


def _objective_spec(cfg: CliConfig, alpha: float, aux_mode: AuxMode,
                    weights: tuple[tuple[str, float], ...]) -> ObjectiveSpec:
    return ObjectiveSpec(
        alpha=alpha,
        k=cfg.k,
        aux_mode=aux_mode,
        composite_weights=weights,
        epsilon=cfg.epsilon,
        seed=cfg.seed,
    )


def cmd_gen(cfg: CliConfig) -> int:
    config = GeneratorConfig(
        n_items=cfg.n_items,
        m_buyers=cfg.m_buyers,
        t_stakeholders=cfg.t_stakeholders,
        membership_probabilities=cfg.membership_probs,
        multi_membership=cfg.multi_membership,
        candidate_fraction=cfg.candidate_fraction,
        utility_distribution=cfg.utility_dist,
        cost_distribution=cfg.cost_dist,
        seed=cfg.seed,
    )
    catalog, queries = generate_instance(config)
    assert cfg.output is not None
    save_snapshot(catalog, queries, cfg.output, format=cfg.format)
    print(
        f"wrote snapshot to {cfg.output}: {catalog.n} items, "
        f"{catalog.t} stakeholders, {len(queries)} sessions (seed {cfg.seed})"
    )
    return EXIT_OK


def _run_sweep(cfg: CliConfig) -> SweepReport:
    assert cfg.input is not None and cfg.solver is not None
    catalog, queries = load_snapshot(cfg.input)
    queries = _subsample(queries, cfg.sample, cfg.seed)
    aux_mode, weights = _resolve_aux_mode(cfg, catalog, queries)
    probe = _objective_spec(cfg, cfg.alpha_grid[0], aux_mode, weights)
    check_solver_compatibility(cfg.solver, probe)  # fail before any solve
    records: list[SweepRecord] = []
    failures: list[str] = []
    for alpha in cfg.alpha_grid:
        spec = _objective_spec(cfg, alpha, aux_mode, weights)
        for entry in solve_batch(catalog, queries, spec, cfg.solver, cfg.parallelism):
            if entry.report is None:
                failures.append(f"alpha={alpha} buyer={entry.buyer}: {entry.error}")
            else:
                records.append(
                    SweepRecord(alpha=alpha, solver=cfg.solver.value, buyer=entry.buyer,
                                report=entry.report)
                )
    if failures:
        for failure in failures:
            logger.error("solve failed: %s", failure)
        raise ValidationError(f"{len(failures)} per-buyer solves failed; see log")
    return SweepReport(stakeholder_names=catalog.stakeholder_names, records=tuple(records))


def cmd_sweep(cfg: CliConfig) -> int:
    report = _run_sweep(cfg)
    assert cfg.output is not None
    write_sweep_report(report, cfg.output, format=cfg.format, aux_scale=cfg.aux_scale)
    for aggregate in report.aggregates():
        print(
            f"alpha={aggregate.alpha:g} solver={aggregate.solver} "
            f"buyers={aggregate.n_buyers} mean_F={aggregate.mean_coverage:.6f} "
            f"mean_G={aggregate.mean_aux:.6f} mean_F_alpha={aggregate.mean_combined:.6f} "
            f"fair_pairs={aggregate.frac_pairs_delta_nonneg:.3f}"
        )
    print(f"wrote report to {cfg.output}")
    return EXIT_OK


cmd_solve = cmd_sweep  # single-alpha sweep; flag validation already differs


BENCH_COLUMNS = (
    "solver",
    "aux",
    "alpha",
    "k",
    "n_buyers",
    "trials",
    "mean_oracle_calls",
    "mean_wall_time_us",
    "median_wall_time_us",
)


def cmd_bench(cfg: CliConfig) -> int:
    assert cfg.input is not None
    catalog, queries = load_snapshot(cfg.input)
    queries = _subsample(queries, cfg.sample, cfg.seed)
    alpha = cfg.alpha_grid[0]
    combos = (
        (SolverKind.GREEDY, AuxMode.UTILITY_MAX),
        (SolverKind.LAZY_GREEDY, AuxMode.UTILITY_MAX),
        (SolverKind.DISTORTED_GREEDY, AuxMode.COST_PER_UTILITY_MIN),
        (SolverKind.STOCHASTIC_DISTORTED_GREEDY, AuxMode.COST_PER_UTILITY_MIN),
    )
    rows = []
    for solver, aux_mode in combos:
        spec = _objective_spec(cfg, alpha, aux_mode, ())
        wall_times_us: list[float] = []
        oracle_calls: list[int] = []
        for trial in range(cfg.trials + 1):  # first trial is warmup
            entries = solve_batch(catalog, queries, spec, solver, cfg.parallelism)
            reports = []
            for entry in entries:
                if entry.report is None:
                    raise ValidationError(
                        f"bench solve failed for {solver.value}: {entry.error}"
                    )
                reports.append(entry.report)
            if trial == 0:
                oracle_calls = [r.oracle_calls for r in reports]
                continue
            wall_times_us.extend(r.wall_time_s * 1e6 for r in reports)
        rows.append(
            {
                "solver": solver.value,
                "aux": aux_mode.value,
                "alpha": alpha,
                "k": cfg.k,
                "n_buyers": len(queries),
                "trials": cfg.trials,
                "mean_oracle_calls": sum(oracle_calls) / len(oracle_calls),
                "mean_wall_time_us": statistics.fmean(wall_times_us),
                "median_wall_time_us": statistics.median(wall_times_us),
            }
        )
    for row in rows:
        print(
            f"{row['solver']:<12} aux={row['aux']:<22} "
            f"mean_calls={row['mean_oracle_calls']:>10.1f} "
            f"mean_us={row['mean_wall_time_us']:>12.1f} "
            f"median_us={row['median_wall_time_us']:>12.1f}"
        )
    if cfg.output is not None:
        if cfg.format == "json":
            with open(cfg.output, "w", encoding="utf-8") as fh:
                json.dump(rows, fh, indent=2)
                fh.write("\n")
        else:
            with open(cfg.output, "w", newline="", encoding="utf-8") as fh:
                writer = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS, lineterminator="\n")
                writer.writeheader()
                writer.writerows(rows)
        print(f"wrote bench table to {cfg.output}")
    return EXIT_OK


def _fairness_failures_from_rows(rows: list[dict]) -> list[str]:
    """Per-(group, buyer, stakeholder) fairness failures from report rows."""
    failures = []
    for row in rows:
        if row["delta"] < 0:
            failures.append(
                f"alpha={row['alpha']:g} buyer {row['buyer_id']} "
                f"stakeholder {row['stakeholder']} delta={row['delta']}"
            )
    return failures


def _counts_from_report(
    rows: list[dict], catalog: Catalog, profiles: dict, k: int
) -> dict[tuple[float, str], dict[str, list[int]]]:
    """Reconstruct stakeholder counts per (alpha, solver) group and buyer.

    The delta metric is ``count - floor(k * threshold)`` exactly, so counts
    are recoverable given the snapshot's thresholds. Inconsistent values mean
    the report does not belong to this snapshot.
    """
    name_to_id = {name: s for s, name in enumerate(catalog.stakeholder_names)}
    groups: dict[tuple[float, str], dict[str, list[int]]] = {}
    for row in rows:
        buyer = row["buyer_id"]
        if buyer not in profiles:
            raise ValidationError(f"report buyer {buyer!r} is not in the snapshot")
        if row["stakeholder"] not in name_to_id:
            raise ValidationError(
                f"report stakeholder {row['stakeholder']!r} is not in the snapshot"
            )
        profile = profiles[buyer]
        s = name_to_id[row["stakeholder"]]
        count = row["delta"] + math.floor(
            Fraction(k * profile.member_counts[s], profile.candidate_count)
        )
        if not 0 <= count <= min(row["n_chosen"], profile.member_counts[s]):
            raise ValidationError(
                f"report/snapshot mismatch: buyer {buyer!r} stakeholder "
                f"{row['stakeholder']!r} implies {count} covering items but only "
                f"{min(row['n_chosen'], profile.member_counts[s])} are possible"
            )
        group = groups.setdefault((row["alpha"], row["solver"]), {})
        group.setdefault(buyer, [0] * catalog.t)[s] = count
    return groups


def _provider_table_from_counts(
    counts: dict[str, list[int]], catalog: Catalog, k: int
) -> list[tuple[str, float, float, bool]]:
    m = len(counts)
    table = []
    for s in range(catalog.t):
        total = sum(buyer_counts[s] for buyer_counts in counts.values())
        inventory = catalog.inventory_sizes[s]
        satisfied = total * catalog.n >= inventory * m * k
        table.append(
            (catalog.stakeholder_names[s], total / (m * k), inventory / catalog.n, satisfied)
        )
    return table


def _submodularity_spot_check(
    catalog: Catalog, queries: list[BuyerQuery], k: int, triples: int, seed: int
) -> int:
    """Sample (A subset-of B, e) triples and count diminishing-returns violations."""
    if k < 2:
        raise ValidationError("submodularity check needs k >= 2 (B plus e must fit in k)")
    rng = np.random.default_rng(seed)
    eligible = [q for q in queries if len(q.candidates) >= 2]
    if not eligible:
        raise ValidationError("submodularity check needs a buyer with >= 2 candidates")
    profiles = {q.buyer: compute_fairness_profile(catalog, q) for q in eligible}
    violations = 0
    for _ in range(triples):
        query = eligible[int(rng.integers(0, len(eligible)))]
        ids = query.item_ids
        profile = profiles[query.buyer]
        b_size = int(rng.integers(1, min(len(ids) - 1, 12, k - 1) + 1))
        picked = rng.choice(len(ids), size=b_size + 1, replace=False)
        e = ids[int(picked[-1])]
        b_set = [ids[int(i)] for i in picked[:-1]]
        a_set = b_set[: int(rng.integers(0, b_size))]

        def cov(chosen: list[int]) -> float:
            return coverage_value(profile, chosen, catalog, k)

        if cov(a_set + [e]) - cov(a_set) < cov(b_set + [e]) - cov(b_set) - SUBMODULARITY_TOLERANCE:
            violations += 1
    return violations


def cmd_verify(cfg: CliConfig) -> int:
    assert cfg.input is not None
    catalog, queries = load_snapshot(cfg.input)
    profiles = {q.buyer: compute_fairness_profile(catalog, q) for q in queries}
    all_passed = True
    summary: dict[str, object] = {}

    needs_solves = {"fairness", "provider"} & set(cfg.checks)
    grouped_counts: dict[tuple[float, str], dict[str, list[int]]] = {}
    fairness_failures: list[str] = []
    if needs_solves:
        if cfg.report is not None:
            rows = read_sweep_details(cfg.report)
            if not rows:
                raise ValidationError(f"report {cfg.report} holds no detail rows")
            grouped_counts = _counts_from_report(rows, catalog, profiles, cfg.k)
            fairness_failures = _fairness_failures_from_rows(rows)
        else:
            assert cfg.solver is not None
            run_queries = _subsample(queries, cfg.sample, cfg.seed)
            aux_mode, weights = _resolve_aux_mode(cfg, catalog, run_queries)
            alpha = cfg.alpha_grid[0]
            spec = _objective_spec(cfg, alpha, aux_mode, weights)
            check_solver_compatibility(cfg.solver, spec)
            entries = solve_batch(catalog, run_queries, spec, cfg.solver, cfg.parallelism)
            failures = [e for e in entries if e.report is None]
            if failures:
                raise ValidationError(f"run-and-verify solve failed: {failures[0].error}")
            counts: dict[str, list[int]] = {}
            for entry in entries:
                report = entry.report
                assert report is not None
                buyer_counts = [0] * catalog.t
                for item in report.chosen:
                    for s in catalog.items[item].memberships:
                        buyer_counts[s] += 1
                counts[entry.buyer] = buyer_counts
                for s, name in enumerate(catalog.stakeholder_names):
                    if report.deltas[s] < 0:
                        fairness_failures.append(
                            f"alpha={alpha:g} buyer {entry.buyer} "
                            f"stakeholder {name} delta={report.deltas[s]}"
                        )
            grouped_counts = {(alpha, cfg.solver.value): counts}

    if "fairness" in cfg.checks:
        passed = not fairness_failures
        all_passed = all_passed and passed
        summary["fairness"] = {"passed": passed, "failures": fairness_failures[:50]}
        print(f"fairness: {'PASS' if passed else 'FAIL'} ({len(fairness_failures)} negative deltas)")
        for failure in fairness_failures[:10]:
            print(f"  FAIL fairness: {failure}")

    if "provider" in cfg.checks:
        provider_passed = True
        provider_summary = []
        for (alpha, solver), counts in grouped_counts.items():
            table = _provider_table_from_counts(counts, catalog, cfg.k)
            group_passed = all(sat for _, _, _, sat in table)
            provider_passed = provider_passed and group_passed
            provider_summary.append(
                {
                    "alpha": alpha,
                    "solver": solver,
                    "passed": group_passed,
                    "table": [
                        {"stakeholder": n, "achieved": a, "required": r, "satisfied": sat}
                        for n, a, r, sat in table
                    ],
                }
            )
            print(f"provider (alpha={alpha:g}, {solver}): {'PASS' if group_passed else 'FAIL'}")
            for name, achieved, required, satisfied in table:
                print(
                    f"  {name:<12} achieved={achieved:.6f} required={required:.6f} "
                    f"{'ok' if satisfied else 'VIOLATED'}"
                )
        all_passed = all_passed and provider_passed
        summary["provider"] = {"passed": provider_passed, "groups": provider_summary}

    if "submodularity" in cfg.checks:
        violations = _submodularity_spot_check(catalog, queries, cfg.k, cfg.triples, cfg.seed)
        passed = violations == 0
        all_passed = all_passed and passed
        summary["submodularity"] = {"passed": passed, "violations": violations, "triples": cfg.triples}
        print(f"submodularity: {'PASS' if passed else 'FAIL'} ({violations} violations in {cfg.triples} triples)")

    if cfg.output is not None:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            json.dump(summary, fh, indent=2)
            fh.write("\n")
    return EXIT_OK if all_passed else EXIT_VERIFICATION


_DISPATCH = {
    "gen": cmd_gen,
    "solve": cmd_solve,
    "sweep": cmd_sweep,
    "bench": cmd_bench,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("FAIRCOVER_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        return _DISPATCH[cfg.subcommand](cfg)
    except (ValidationError, ConfigurationError) as exc:
        logger.error("%s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except FaircoverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
