"""Snapshot round-trips, the synthetic generator, and sweep-report files."""

from __future__ import annotations

import csv
import logging
import math

import pytest

import faircover as fc
from faircover import GeneratorConfig, SnapshotError, ValidationError
from faircover.dataio import SUMMARY_BUYER_ID, SWEEP_COLUMNS, SweepRecord, SweepReport
from testkit import make_catalog, make_query

MINIMAL_STAKEHOLDERS = "stakeholder_id,name\n0,solo\n"
MINIMAL_ITEMS = "item_id,cost,memberships\n0,125000.0,solo\n"
MINIMAL_SESSIONS = "buyer_id,item_id,utility\nbuyer-a,0,0.75\n"


def write_minimal_snapshot(path, items=MINIMAL_ITEMS, sessions=MINIMAL_SESSIONS):
    path.mkdir()
    (path / "stakeholders.csv").write_text(MINIMAL_STAKEHOLDERS)
    (path / "items.csv").write_text(items)
    (path / "sessions.csv").write_text(sessions)


class TestLoadSnapshot:
    def test_minimal_file(self, tmp_path):
        write_minimal_snapshot(tmp_path / "snap")
        catalog, queries = fc.load_snapshot(tmp_path / "snap")
        assert catalog.n == 1 and catalog.t == 1
        assert catalog.items[0].cost == 125000.0
        assert len(queries) == 1
        assert queries[0].buyer == "buyer-a"
        assert queries[0].candidates == ((0, 0.75),)

    def test_unknown_item_id_named(self, tmp_path):
        write_minimal_snapshot(
            tmp_path / "snap",
            sessions="buyer_id,item_id,utility\nbuyer-a,5,0.75\n",
        )
        with pytest.raises(SnapshotError, match="unknown item id 5"):
            fc.load_snapshot(tmp_path / "snap")

    def test_duplicate_session_item_rejected(self, tmp_path):
        write_minimal_snapshot(
            tmp_path / "snap",
            sessions="buyer_id,item_id,utility\nbuyer-a,0,0.75\nbuyer-a,0,0.5\n",
        )
        with pytest.raises(SnapshotError, match="duplicate item 0"):
            fc.load_snapshot(tmp_path / "snap")

    def test_parse_error_reports_line(self, tmp_path):
        write_minimal_snapshot(
            tmp_path / "snap",
            items="item_id,cost,memberships\n0,not-a-number,solo\n",
        )
        with pytest.raises(SnapshotError, match="line 2.*cost"):
            fc.load_snapshot(tmp_path / "snap")

    def test_unknown_membership_name_rejected(self, tmp_path):
        write_minimal_snapshot(
            tmp_path / "snap",
            items="item_id,cost,memberships\n0,1.0,ghost\n",
        )
        with pytest.raises(SnapshotError, match="ghost"):
            fc.load_snapshot(tmp_path / "snap")

    def test_negative_utility_warns_but_loads(self, tmp_path, caplog):
        write_minimal_snapshot(
            tmp_path / "snap",
            sessions="buyer_id,item_id,utility\nbuyer-a,0,-0.25\n",
        )
        with caplog.at_level(logging.WARNING, logger="faircover.dataio"):
            _, queries = fc.load_snapshot(tmp_path / "snap")
        assert queries[0].candidates[0][1] == -0.25
        assert "negative utilities" in caplog.text

    def test_missing_path_is_an_error(self, tmp_path):
        with pytest.raises(SnapshotError, match="does not exist"):
            fc.load_snapshot(tmp_path / "nowhere")


class TestRoundTrips:
    @pytest.mark.parametrize("format", ["csv", "json"])
    def test_generated_snapshot_round_trips(self, tmp_path, format):
        catalog, queries = fc.generate_instance(
            GeneratorConfig(n_items=50, m_buyers=6, t_stakeholders=4, seed=42)
        )
        target = tmp_path / ("snap.json" if format == "json" else "snap")
        fc.save_snapshot(catalog, queries, target, format=format)
        loaded_catalog, loaded_queries = fc.load_snapshot(target)
        assert loaded_catalog == catalog
        assert loaded_queries == queries

    @pytest.mark.parametrize("format", ["csv", "json"])
    def test_saving_a_loaded_snapshot_is_byte_stable(self, tmp_path, format):
        catalog, queries = fc.generate_instance(
            GeneratorConfig(n_items=30, m_buyers=4, t_stakeholders=3, seed=9)
        )
        first = tmp_path / ("a.json" if format == "json" else "a")
        second = tmp_path / ("b.json" if format == "json" else "b")
        fc.save_snapshot(catalog, queries, first, format=format)
        loaded = fc.load_snapshot(first)
        fc.save_snapshot(*loaded, second, format=format)
        if format == "json":
            assert first.read_bytes() == second.read_bytes()
        else:
            for name in ("stakeholders.csv", "items.csv", "sessions.csv"):
                assert (first / name).read_bytes() == (second / name).read_bytes()


class TestGenerator:
    def test_same_seed_same_snapshot(self, tmp_path):
        config = GeneratorConfig(n_items=80, m_buyers=10, t_stakeholders=5, seed=42)
        a = fc.generate_instance(config)
        b = fc.generate_instance(config)
        assert a == b
        fc.save_snapshot(*a, tmp_path / "a", format="csv")
        fc.save_snapshot(*b, tmp_path / "b", format="csv")
        for name in ("stakeholders.csv", "items.csv", "sessions.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_certain_membership_gives_threshold_one(self):
        catalog, queries = fc.generate_instance(
            GeneratorConfig(n_items=40, m_buyers=5, t_stakeholders=2,
                            membership_probabilities=(1.0, 0.3), seed=3)
        )
        for query in queries:
            profile = fc.compute_fairness_profile(catalog, query)
            assert profile.threshold(0) == 1

    def test_membership_frequency_within_three_standard_errors(self):
        probabilities = (0.1, 0.4, 0.75)
        catalog, _ = fc.generate_instance(
            GeneratorConfig(n_items=10_000, m_buyers=1, t_stakeholders=3,
                            membership_probabilities=probabilities, seed=12)
        )
        n = catalog.n
        for s, p in enumerate(probabilities):
            observed = sum(1 for rec in catalog.items if s in rec.memberships) / n
            standard_error = math.sqrt(p * (1 - p) / n)
            assert abs(observed - p) <= 3 * standard_error

    def test_single_membership_mode_assigns_exactly_one(self):
        catalog, _ = fc.generate_instance(
            GeneratorConfig(n_items=200, m_buyers=1, t_stakeholders=4,
                            membership_probabilities=(0.4, 0.3, 0.2, 0.1),
                            multi_membership=False, seed=6)
        )
        assert all(len(rec.memberships) == 1 for rec in catalog.items)

    def test_candidate_sizes_respect_fraction_bounds(self):
        catalog, queries = fc.generate_instance(
            GeneratorConfig(n_items=500, m_buyers=40, t_stakeholders=3,
                            candidate_fraction=(0.1, 0.2), seed=4)
        )
        for query in queries:
            assert 45 <= len(query.candidates) <= 105

    def test_exponential_utilities_are_positive(self):
        _, queries = fc.generate_instance(
            GeneratorConfig(n_items=100, m_buyers=10, t_stakeholders=2,
                            utility_distribution=("exponential", 2.0), seed=5)
        )
        assert all(u > 0 for q in queries for _, u in q.candidates)

    def test_bad_parameters_rejected(self):
        with pytest.raises(ValidationError):
            GeneratorConfig(n_items=0)
        with pytest.raises(ValidationError):
            GeneratorConfig(membership_probabilities=(1.5,), t_stakeholders=1)
        with pytest.raises(ValidationError):
            GeneratorConfig(candidate_fraction=(0.5, 0.2))
        with pytest.raises(ValidationError):
            GeneratorConfig(utility_distribution=("gamma", 1.0))
        with pytest.raises(ValidationError):
            GeneratorConfig(cost_distribution=("lognormal", 1.0, -2.0))


def tiny_sweep_report(alphas=(0.0, 1.0)):
    catalog = make_catalog([{0}, {1}, set()], t=2)
    query = make_query([0, 1, 2], [0.9, 0.5, 0.2])
    records = []
    for alpha in alphas:
        spec = fc.ObjectiveSpec(alpha=alpha, k=2, aux_mode=fc.AuxMode.UTILITY_MAX)
        report = fc.solve_greedy(catalog, query, spec)
        records.append(SweepRecord(alpha=alpha, solver="greedy", buyer="b0", report=report))
    return SweepReport(stakeholder_names=catalog.stakeholder_names, records=tuple(records))


class TestSweepReport:
    def test_row_counts_one_buyer_two_alphas(self, tmp_path):
        report = tiny_sweep_report()
        fc.write_sweep_report(report, tmp_path / "sweep.csv", format="csv")
        with open(tmp_path / "sweep.csv", newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == list(SWEEP_COLUMNS)
        body = rows[1:]
        t = 2
        assert len(body) == 2 * t + 2  # delta rows plus one summary row per alpha
        assert sum(1 for r in body if r[2] == SUMMARY_BUYER_ID) == 2

    def test_empty_report_writes_header_only(self, tmp_path):
        report = SweepReport(stakeholder_names=("s0",), records=())
        fc.write_sweep_report(report, tmp_path / "empty.csv", format="csv")
        with open(tmp_path / "empty.csv", newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows == [list(SWEEP_COLUMNS)]

    def test_aggregates_match_recomputation_from_details(self, tmp_path):
        catalog, queries = fc.generate_instance(
            GeneratorConfig(n_items=60, m_buyers=8, t_stakeholders=3, seed=13)
        )
        records = []
        for alpha in (0.0, 0.5, 1.0):
            spec = fc.ObjectiveSpec(alpha=alpha, k=5, aux_mode=fc.AuxMode.UTILITY_MAX)
            for entry in fc.solve_batch(catalog, queries, spec, fc.SolverKind.LAZY_GREEDY):
                records.append(
                    SweepRecord(alpha=alpha, solver="lazy", buyer=entry.buyer, report=entry.report)
                )
        report = SweepReport(stakeholder_names=catalog.stakeholder_names, records=tuple(records))
        fc.write_sweep_report(report, tmp_path / "sweep.csv", format="csv")
        details = fc.read_sweep_details(tmp_path / "sweep.csv")
        by_alpha: dict[float, list[dict]] = {}
        for row in details:
            by_alpha.setdefault(row["alpha"], []).append(row)
        for aggregate in report.aggregates():
            rows = by_alpha[aggregate.alpha]
            buyers = {r["buyer_id"] for r in rows}
            mean_f = sum(r["F"] for r in rows) / len(rows)  # F repeats per stakeholder
            assert mean_f == pytest.approx(aggregate.mean_coverage, abs=1e-12)
            for s, name in enumerate(catalog.stakeholder_names):
                mean_delta = sum(r["delta"] for r in rows if r["stakeholder"] == name) / len(buyers)
                assert mean_delta == pytest.approx(
                    aggregate.mean_delta_by_stakeholder[name], abs=1e-12
                )

    def test_json_mirror_round_trips_details(self, tmp_path):
        report = tiny_sweep_report()
        fc.write_sweep_report(report, tmp_path / "sweep.json", format="json")
        details = fc.read_sweep_details(tmp_path / "sweep.json")
        assert len(details) == 4  # 2 alphas x 2 stakeholders
        assert {d["alpha"] for d in details} == {0.0, 1.0}

    def test_aux_scale_only_rescales_reported_G(self, tmp_path):
        report = tiny_sweep_report(alphas=(0.5,))
        fc.write_sweep_report(report, tmp_path / "scaled.csv", format="csv", aux_scale=1e-6)
        details = fc.read_sweep_details(tmp_path / "scaled.csv")
        raw = report.records[0].report
        assert details[0]["G"] == pytest.approx(raw.aux_value * 1e-6, rel=1e-12)
        assert details[0]["F_alpha"] == pytest.approx(raw.combined_value, rel=1e-12)
