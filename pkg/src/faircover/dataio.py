"""Snapshot files, the seeded synthetic generator, and sweep-report output.

A marketplace snapshot is either a directory of three CSVs
(``stakeholders.csv``, ``items.csv``, ``sessions.csv``) or a single JSON
file mirroring the same fields. Both encodings are canonical: fixed column
order, stakeholders and items by id, sessions in buyer order, floats in
shortest round-trip form. ``load_snapshot(save_snapshot(x))`` reproduces the
in-memory structures exactly and re-saving a loaded file is byte-stable.

The generator replaces proprietary marketplace data with a seeded synthetic
instance: per-item stakeholder memberships (independent Bernoulli draws, or
one categorical draw per item), lognormal or uniform costs, and per-buyer
candidate subsets with uniform or exponential utilities. All randomness
comes from one PCG64 stream, so identical configs give identical snapshots.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .core import (
    BuyerQuery,
    Catalog,
    ItemRecord,
    SolveReport,
    ValidationError,
)

logger = logging.getLogger("faircover.dataio")

MEMBERSHIP_SEPARATOR = "|"

STAKEHOLDERS_CSV = "stakeholders.csv"
ITEMS_CSV = "items.csv"
SESSIONS_CSV = "sessions.csv"

SWEEP_COLUMNS = (
    "alpha",
    "solver",
    "buyer_id",
    "stakeholder",
    "delta",
    "F",
    "G",
    "F_alpha",
    "n_chosen",
    "oracle_calls",
    "wall_time_us",
    "seed",
)

#: buyer_id sentinel marking per-(alpha, solver) aggregate rows in sweep CSVs.
SUMMARY_BUYER_ID = "__mean__"


class SnapshotError(ValidationError):
    """A snapshot file failed to parse or broke referential integrity."""


@dataclass(frozen=True)
class GeneratorConfig:
    """Knobs for the synthetic instance generator.

    ``membership_probabilities`` is one probability per stakeholder; with
    ``multi_membership`` each item joins each inventory independently,
    otherwise every item gets exactly one stakeholder drawn categorically
    (probabilities normalized). ``candidate_fraction`` bounds the uniform
    per-buyer candidate-set size as a fraction of the catalog.

    Distributions: ``utility_distribution`` is ``("uniform", low, high)`` or
    ``("exponential", rate)``; ``cost_distribution`` is
    ``("lognormal", mu, sigma)`` or ``("uniform", low, high)``.
    """

    n_items: int = 2000
    m_buyers: int = 200
    t_stakeholders: int = 5
    membership_probabilities: tuple[float, ...] | None = None
    multi_membership: bool = True
    candidate_fraction: tuple[float, float] = (0.05, 0.15)
    utility_distribution: tuple = ("uniform", 0.05, 1.0)
    cost_distribution: tuple = ("lognormal", 12.5, 0.5)
    seed: int = 0

    def __post_init__(self) -> None:
        if min(self.n_items, self.m_buyers, self.t_stakeholders) < 1:
            raise ValidationError("n_items, m_buyers, t_stakeholders must be positive")
        probs = self.membership_probabilities
        if probs is None:
            base = (0.55, 0.15, 0.08, 0.30, 0.20)
            probs = tuple(base[i % len(base)] for i in range(self.t_stakeholders))
            object.__setattr__(self, "membership_probabilities", probs)
        else:
            object.__setattr__(self, "membership_probabilities", tuple(float(p) for p in probs))
            probs = self.membership_probabilities
        if len(probs) != self.t_stakeholders:
            raise ValidationError(
                f"need {self.t_stakeholders} membership probabilities, got {len(probs)}"
            )
        if any(not (0.0 <= p <= 1.0) for p in probs):
            raise ValidationError("membership probabilities must lie in [0, 1]")
        if not self.multi_membership and sum(probs) <= 0.0:
            raise ValidationError("categorical memberships need a positive probability mass")
        low, high = self.candidate_fraction
        if not (0.0 < low <= high <= 1.0):
            raise ValidationError(
                f"candidate_fraction must satisfy 0 < low <= high <= 1, got {self.candidate_fraction}"
            )
        self._check_distribution("utility_distribution", self.utility_distribution, ("uniform", "exponential"))
        self._check_distribution("cost_distribution", self.cost_distribution, ("lognormal", "uniform"))
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            raise ValidationError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")

    @staticmethod
    def _check_distribution(name: str, dist: tuple, allowed: tuple[str, ...]) -> None:
        if not dist or dist[0] not in allowed:
            raise ValidationError(f"{name} must be one of {allowed}, got {dist!r}")
        kind, *params = dist
        if kind in ("uniform",):
            if len(params) != 2 or not all(math.isfinite(p) for p in params) or params[0] > params[1]:
                raise ValidationError(f"{name}: uniform needs (low, high) with low <= high, got {params}")
        elif kind == "exponential":
            if len(params) != 1 or not (math.isfinite(params[0]) and params[0] > 0):
                raise ValidationError(f"{name}: exponential needs a positive rate, got {params}")
        elif kind == "lognormal":
            if len(params) != 2 or not all(math.isfinite(p) for p in params) or params[1] < 0:
                raise ValidationError(f"{name}: lognormal needs (mu, sigma >= 0), got {params}")


def _draw(rng: np.random.Generator, dist: tuple, size: int) -> np.ndarray:
    kind, *params = dist
    if kind == "uniform":
        return rng.uniform(params[0], params[1], size)
    if kind == "exponential":
        return rng.exponential(1.0 / params[0], size)
    if kind == "lognormal":
        return rng.lognormal(params[0], params[1], size)
    raise ValidationError(f"unknown distribution {kind!r}")


def generate_instance(config: GeneratorConfig) -> tuple[Catalog, list[BuyerQuery]]:
    """Deterministically generate a catalog and per-buyer queries from a config."""
    rng = np.random.default_rng(config.seed)
    n, m, t = config.n_items, config.m_buyers, config.t_stakeholders
    probs = config.membership_probabilities
    assert probs is not None

    if config.multi_membership:
        mask = np.column_stack([rng.random(n) < p for p in probs])
        member_lists = [frozenset(np.nonzero(mask[i])[0].tolist()) for i in range(n)]
    else:
        weights = np.asarray(probs, dtype=float)
        weights = weights / weights.sum()
        assigned = rng.choice(t, size=n, p=weights)
        member_lists = [frozenset((int(assigned[i]),)) for i in range(n)]

    costs = _draw(rng, config.cost_distribution, n)
    items = tuple(
        ItemRecord(item=i, memberships=member_lists[i], cost=float(costs[i])) for i in range(n)
    )
    catalog = Catalog(items=items, stakeholder_names=tuple(f"s{j}" for j in range(t)))

    low, high = config.candidate_fraction
    width = max(4, len(str(m - 1)))
    queries: list[BuyerQuery] = []
    for b in range(m):
        fraction = rng.uniform(low, high)
        size = max(1, int(round(fraction * n)))
        ids = np.sort(rng.choice(n, size=size, replace=False))
        utilities = _draw(rng, config.utility_distribution, size)
        queries.append(
            BuyerQuery(
                buyer=f"b{b:0{width}d}",
                candidates=tuple((int(i), float(u)) for i, u in zip(ids, utilities)),
            )
        )
    return catalog, queries


def _format_float(x: float) -> str:
    return repr(float(x))


def save_snapshot(
    catalog: Catalog,
    queries: Sequence[BuyerQuery],
    path: str | Path,
    format: str = "csv",
) -> None:
    """Write a snapshot in canonical form; ``csv`` writes a directory of three
    files, ``json`` a single file."""
    path = Path(path)
    for name in catalog.stakeholder_names:
        if MEMBERSHIP_SEPARATOR in name:
            raise ValidationError(
                f"stakeholder name {name!r} contains the reserved separator "
                f"{MEMBERSHIP_SEPARATOR!r}"
            )
    if format == "csv":
        path.mkdir(parents=True, exist_ok=True)
        with open(path / STAKEHOLDERS_CSV, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["stakeholder_id", "name"])
            for s, name in enumerate(catalog.stakeholder_names):
                writer.writerow([s, name])
        with open(path / ITEMS_CSV, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["item_id", "cost", "memberships"])
            for record in catalog.items:
                names = MEMBERSHIP_SEPARATOR.join(
                    catalog.stakeholder_names[s] for s in sorted(record.memberships)
                )
                writer.writerow([record.item, _format_float(record.cost), names])
        with open(path / SESSIONS_CSV, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["buyer_id", "item_id", "utility"])
            for query in queries:
                for item, utility in query.candidates:
                    writer.writerow([query.buyer, item, _format_float(utility)])
    elif format == "json":
        payload = {
            "stakeholders": [
                {"stakeholder_id": s, "name": name}
                for s, name in enumerate(catalog.stakeholder_names)
            ],
            "items": [
                {
                    "item_id": record.item,
                    "cost": record.cost,
                    "memberships": [
                        catalog.stakeholder_names[s] for s in sorted(record.memberships)
                    ],
                }
                for record in catalog.items
            ],
            "sessions": [
                {"buyer_id": query.buyer, "item_id": item, "utility": utility}
                for query in queries
                for item, utility in query.candidates
            ],
        }
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, ensure_ascii=False)
            fh.write("\n")
    else:
        raise ValidationError(f"unknown snapshot format {format!r} (use 'csv' or 'json')")


def _parse_float(text: str, what: str, where: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise SnapshotError(f"{where}: cannot parse {what} {text!r} as a number") from None
    if not math.isfinite(value):
        raise SnapshotError(f"{where}: {what} must be finite, got {text!r}")
    return value


def _read_csv_rows(path: Path, expected_header: list[str]) -> list[tuple[int, list[str]]]:
    if not path.exists():
        raise SnapshotError(f"missing snapshot file {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        rows = [(reader.line_num, row) for row in reader]
    if not rows:
        raise SnapshotError(f"{path}: empty file, expected header {expected_header}")
    first_line, header = rows[0]
    if header != expected_header:
        raise SnapshotError(
            f"{path}, line {first_line}: expected header {expected_header}, got {header}"
        )
    for line, row in rows[1:]:
        if len(row) != len(expected_header):
            raise SnapshotError(
                f"{path}, line {line}: expected {len(expected_header)} columns, got {len(row)}"
            )
    return rows[1:]


def _load_snapshot_csv(path: Path) -> tuple[Catalog, list[BuyerQuery]]:
    stakeholder_rows = _read_csv_rows(path / STAKEHOLDERS_CSV, ["stakeholder_id", "name"])
    names_by_id: dict[int, str] = {}
    for line, (sid_text, name) in stakeholder_rows:
        where = f"{path / STAKEHOLDERS_CSV}, line {line}"
        try:
            sid = int(sid_text)
        except ValueError:
            raise SnapshotError(f"{where}: bad stakeholder id {sid_text!r}") from None
        if sid in names_by_id:
            raise SnapshotError(f"{where}: duplicate stakeholder id {sid}")
        names_by_id[sid] = name
    if sorted(names_by_id) != list(range(len(names_by_id))):
        raise SnapshotError(
            f"{path / STAKEHOLDERS_CSV}: stakeholder ids must be dense 0..t-1, got {sorted(names_by_id)}"
        )
    names = tuple(names_by_id[s] for s in range(len(names_by_id)))
    id_by_name = {name: s for s, name in enumerate(names)}
    if len(id_by_name) != len(names):
        raise SnapshotError(f"{path / STAKEHOLDERS_CSV}: stakeholder names must be unique")

    item_rows = _read_csv_rows(path / ITEMS_CSV, ["item_id", "cost", "memberships"])
    records: list[ItemRecord] = []
    for line, (item_text, cost_text, member_text) in item_rows:
        where = f"{path / ITEMS_CSV}, line {line}"
        try:
            item = int(item_text)
        except ValueError:
            raise SnapshotError(f"{where}: bad item id {item_text!r}") from None
        cost = _parse_float(cost_text, "cost (column 'cost')", where)
        members = set()
        if member_text:
            for member_name in member_text.split(MEMBERSHIP_SEPARATOR):
                if member_name not in id_by_name:
                    raise SnapshotError(f"{where}: unknown stakeholder name {member_name!r}")
                members.add(id_by_name[member_name])
        records.append(ItemRecord(item=item, memberships=frozenset(members), cost=cost))

    session_rows = _read_csv_rows(path / SESSIONS_CSV, ["buyer_id", "item_id", "utility"])
    sessions = [
        (line, buyer, item_text, utility_text)
        for line, (buyer, item_text, utility_text) in session_rows
    ]
    return _assemble(records, names, sessions, str(path / SESSIONS_CSV))


def _load_snapshot_json(path: Path) -> tuple[Catalog, list[BuyerQuery]]:
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SnapshotError(f"{path}, line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    for key in ("stakeholders", "items", "sessions"):
        if key not in payload or not isinstance(payload[key], list):
            raise SnapshotError(f"{path}: missing or malformed {key!r} array")
    entries = sorted(payload["stakeholders"], key=lambda e: e.get("stakeholder_id", -1))
    if [e.get("stakeholder_id") for e in entries] != list(range(len(entries))):
        raise SnapshotError(f"{path}: stakeholder ids must be dense 0..t-1")
    names = tuple(str(e["name"]) for e in entries)
    id_by_name = {name: s for s, name in enumerate(names)}
    if len(id_by_name) != len(names):
        raise SnapshotError(f"{path}: stakeholder names must be unique")
    records = []
    for position, entry in enumerate(payload["items"]):
        where = f"{path}: items[{position}]"
        member_names = entry.get("memberships", [])
        members = set()
        for member_name in member_names:
            if member_name not in id_by_name:
                raise SnapshotError(f"{where}: unknown stakeholder name {member_name!r}")
            members.add(id_by_name[member_name])
        try:
            records.append(
                ItemRecord(
                    item=int(entry["item_id"]),
                    memberships=frozenset(members),
                    cost=float(entry["cost"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise SnapshotError(f"{where}: {exc}") from None
    sessions = []
    for position, entry in enumerate(payload["sessions"]):
        try:
            sessions.append(
                (position, str(entry["buyer_id"]), str(entry["item_id"]), str(entry["utility"]))
            )
        except (KeyError, TypeError) as exc:
            raise SnapshotError(f"{path}: sessions[{position}]: {exc}") from None
    return _assemble(records, names, sessions, f"{path} sessions")


def _assemble(
    records: list[ItemRecord],
    names: tuple[str, ...],
    sessions: list[tuple[int, str, str, str]],
    sessions_where: str,
) -> tuple[Catalog, list[BuyerQuery]]:
    try:
        catalog = Catalog(items=tuple(records), stakeholder_names=names)
    except ValidationError as exc:
        raise SnapshotError(str(exc)) from None
    candidates: dict[str, list[tuple[int, float]]] = {}
    seen: set[tuple[str, int]] = set()
    negative_utilities = 0
    for line, buyer, item_text, utility_text in sessions:
        where = f"{sessions_where}, line {line}"
        try:
            item = int(item_text)
        except ValueError:
            raise SnapshotError(f"{where}: bad item id {item_text!r}") from None
        if not 0 <= item < catalog.n:
            raise SnapshotError(
                f"{where}: session references unknown item id {item} "
                f"(catalog has {catalog.n} items)"
            )
        if (buyer, item) in seen:
            raise SnapshotError(f"{where}: duplicate item {item} in session {buyer!r}")
        seen.add((buyer, item))
        utility = _parse_float(utility_text, "utility (column 'utility')", where)
        if utility < 0:
            negative_utilities += 1
        candidates.setdefault(buyer, []).append((item, utility))
    if not candidates:
        raise SnapshotError(f"{sessions_where}: snapshot has no sessions")
    if negative_utilities:
        logger.warning(
            "snapshot contains %d negative utilities; utility maximization will reject them",
            negative_utilities,
        )
    queries = [BuyerQuery(buyer=b, candidates=tuple(rows)) for b, rows in candidates.items()]
    return catalog, queries


def load_snapshot(path: str | Path) -> tuple[Catalog, list[BuyerQuery]]:
    """Load a snapshot directory (CSV) or file (JSON), validating integrity."""
    path = Path(path)
    if path.is_dir():
        return _load_snapshot_csv(path)
    if path.exists():
        return _load_snapshot_json(path)
    raise SnapshotError(f"snapshot path {path} does not exist")


@dataclass(frozen=True)
class SweepRecord:
    """One (alpha, solver, buyer) solve destined for the sweep report."""

    alpha: float
    solver: str
    buyer: str
    report: SolveReport


@dataclass(frozen=True)
class SweepAggregate:
    """Per-(alpha, solver) means over buyers, plus the fair-pair fraction."""

    alpha: float
    solver: str
    n_buyers: int
    mean_coverage: float
    mean_aux: float
    mean_combined: float
    mean_n_chosen: float
    mean_oracle_calls: float
    mean_wall_time_us: float
    mean_delta_by_stakeholder: dict[str, float]
    frac_pairs_delta_nonneg: float


@dataclass(frozen=True)
class SweepReport:
    """All per-buyer solves of a sweep; aggregates are derived, never stored."""

    stakeholder_names: tuple[str, ...]
    records: tuple[SweepRecord, ...]

    def aggregates(self) -> list[SweepAggregate]:
        groups: dict[tuple[float, str], list[SweepRecord]] = {}
        for record in self.records:
            groups.setdefault((record.alpha, record.solver), []).append(record)
        out = []
        for (alpha, solver), group in groups.items():
            n = len(group)
            deltas_by_s = {
                name: sum(r.report.deltas[s] for r in group) / n
                for s, name in enumerate(self.stakeholder_names)
            }
            pairs = n * len(self.stakeholder_names)
            fair_pairs = sum(
                1 for r in group for s in range(len(self.stakeholder_names))
                if r.report.deltas[s] >= 0
            )
            out.append(
                SweepAggregate(
                    alpha=alpha,
                    solver=solver,
                    n_buyers=n,
                    mean_coverage=sum(r.report.coverage_value for r in group) / n,
                    mean_aux=sum(r.report.aux_value for r in group) / n,
                    mean_combined=sum(r.report.combined_value for r in group) / n,
                    mean_n_chosen=sum(r.report.n_chosen for r in group) / n,
                    mean_oracle_calls=sum(r.report.oracle_calls for r in group) / n,
                    mean_wall_time_us=sum(r.report.wall_time_s * 1e6 for r in group) / n,
                    mean_delta_by_stakeholder=deltas_by_s,
                    frac_pairs_delta_nonneg=fair_pairs / pairs,
                )
            )
        return out


def write_sweep_report(
    report: SweepReport,
    path: str | Path,
    format: str = "csv",
    aux_scale: float = 1.0,
) -> None:
    """Serialize a sweep report.

    CSV: one detail row per (alpha, solver, buyer, stakeholder) followed by
    one aggregate row per (alpha, solver) with ``buyer_id`` set to
    ``__mean__``. JSON: detail and aggregate arrays, including per-stakeholder
    mean deltas. ``aux_scale`` rescales the displayed auxiliary values only
    (reporting convenience; solver outputs are untouched).
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    aggregates = report.aggregates()
    if format == "csv":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(SWEEP_COLUMNS)
            grouped: dict[tuple[float, str], list[SweepRecord]] = {}
            for record in report.records:
                grouped.setdefault((record.alpha, record.solver), []).append(record)
            for aggregate in aggregates:
                for record in grouped[(aggregate.alpha, aggregate.solver)]:
                    r = record.report
                    for s, name in enumerate(report.stakeholder_names):
                        writer.writerow(
                            [
                                _format_float(record.alpha),
                                record.solver,
                                record.buyer,
                                name,
                                r.deltas[s],
                                _format_float(r.coverage_value),
                                _format_float(r.aux_value * aux_scale),
                                _format_float(r.combined_value),
                                r.n_chosen,
                                r.oracle_calls,
                                int(round(r.wall_time_s * 1e6)),
                                r.seed_used,
                            ]
                        )
                writer.writerow(
                    [
                        _format_float(aggregate.alpha),
                        aggregate.solver,
                        SUMMARY_BUYER_ID,
                        "",
                        "",
                        _format_float(aggregate.mean_coverage),
                        _format_float(aggregate.mean_aux * aux_scale),
                        _format_float(aggregate.mean_combined),
                        _format_float(aggregate.mean_n_chosen),
                        _format_float(aggregate.mean_oracle_calls),
                        _format_float(aggregate.mean_wall_time_us),
                        "",
                    ]
                )
    elif format == "json":
        payload = {
            "stakeholders": list(report.stakeholder_names),
            "details": [
                {
                    "alpha": record.alpha,
                    "solver": record.solver,
                    "buyer_id": record.buyer,
                    "deltas": {
                        name: record.report.deltas[s]
                        for s, name in enumerate(report.stakeholder_names)
                    },
                    "F": record.report.coverage_value,
                    "G": record.report.aux_value * aux_scale,
                    "F_alpha": record.report.combined_value,
                    "n_chosen": record.report.n_chosen,
                    "oracle_calls": record.report.oracle_calls,
                    "wall_time_us": int(round(record.report.wall_time_s * 1e6)),
                    "seed": record.report.seed_used,
                }
                for record in report.records
            ],
            "aggregates": [
                {
                    "alpha": a.alpha,
                    "solver": a.solver,
                    "n_buyers": a.n_buyers,
                    "mean_F": a.mean_coverage,
                    "mean_G": a.mean_aux * aux_scale,
                    "mean_F_alpha": a.mean_combined,
                    "mean_n_chosen": a.mean_n_chosen,
                    "mean_oracle_calls": a.mean_oracle_calls,
                    "mean_wall_time_us": a.mean_wall_time_us,
                    "mean_delta_by_stakeholder": a.mean_delta_by_stakeholder,
                    "frac_pairs_delta_nonneg": a.frac_pairs_delta_nonneg,
                }
                for a in aggregates
            ],
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, ensure_ascii=False)
            fh.write("\n")
    else:
        raise ValidationError(f"unknown report format {format!r} (use 'csv' or 'json')")


def read_sweep_details(path: str | Path) -> list[dict]:
    """Read back a sweep report's detail rows (aggregate rows are skipped).

    Each returned dict has alpha, solver, buyer_id, stakeholder, delta,
    F, G, F_alpha, n_chosen, oracle_calls, wall_time_us, seed.
    """
    path = Path(path)
    if not path.exists():
        raise SnapshotError(f"report path {path} does not exist")
    details: list[dict] = []
    if path.suffix == ".json":
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        for entry in payload.get("details", []):
            for name, delta in entry["deltas"].items():
                details.append(
                    {
                        "alpha": float(entry["alpha"]),
                        "solver": entry["solver"],
                        "buyer_id": entry["buyer_id"],
                        "stakeholder": name,
                        "delta": int(delta),
                        "F": float(entry["F"]),
                        "G": float(entry["G"]),
                        "F_alpha": float(entry["F_alpha"]),
                        "n_chosen": int(entry["n_chosen"]),
                        "oracle_calls": int(entry["oracle_calls"]),
                        "wall_time_us": int(entry["wall_time_us"]),
                        "seed": int(entry["seed"]),
                    }
                )
        return details
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != list(SWEEP_COLUMNS):
            raise SnapshotError(
                f"{path}: expected columns {list(SWEEP_COLUMNS)}, got {reader.fieldnames}"
            )
        for row in reader:
            if row["buyer_id"] == SUMMARY_BUYER_ID:
                continue
            details.append(
                {
                    "alpha": float(row["alpha"]),
                    "solver": row["solver"],
                    "buyer_id": row["buyer_id"],
                    "stakeholder": row["stakeholder"],
                    "delta": int(row["delta"]),
                    "F": float(row["F"]),
                    "G": float(row["G"]),
                    "F_alpha": float(row["F_alpha"]),
                    "n_chosen": int(row["n_chosen"]),
                    "oracle_calls": int(row["oracle_calls"]),
                    "wall_time_us": int(row["wall_time_us"]),
                    "seed": int(row["seed"]),
                }
            )
    return details
