"""End-to-end CLI behavior: subcommands, exit codes, file outputs."""

from __future__ import annotations

import csv

import pytest

import faircover as fc
from faircover.cli import (
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VALIDATION,
    EXIT_VERIFICATION,
    main,
)

SNAPSHOT_FILES = ("stakeholders.csv", "items.csv", "sessions.csv")


def run(*argv: str) -> int:
    return main(list(argv))


def gen_small(tmp_path, name="snap", **overrides):
    flags = {
        "--n-items": "60",
        "--m-buyers": "6",
        "--t": "3",
        "--seed": "17",
    }
    flags.update(overrides)
    target = tmp_path / name
    argv = ["gen", "--output", str(target)]
    for flag, value in flags.items():
        argv += [flag, value]
    assert run(*argv) == EXIT_OK
    return target


class TestGen:
    def test_two_runs_are_byte_identical(self, tmp_path):
        a = gen_small(tmp_path, "a")
        b = gen_small(tmp_path, "b")
        for name in SNAPSHOT_FILES:
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_missing_output_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            run("gen", "--seed", "42")
        assert exc.value.code == EXIT_USAGE

    def test_json_format(self, tmp_path):
        target = tmp_path / "snap.json"
        assert run("gen", "--output", str(target), "--format", "json",
                   "--n-items", "20", "--m-buyers", "2", "--t", "2") == EXIT_OK
        catalog, queries = fc.load_snapshot(target)
        assert catalog.n == 20 and len(queries) == 2


class TestSolveAndSweep:
    def test_solve_rows_match_direct_library_call(self, tmp_path):
        snap = gen_small(tmp_path)
        out = tmp_path / "solve.csv"
        assert run("solve", "--input", str(snap), "--output", str(out),
                   "--solver", "greedy", "--alpha", "0.5", "--k", "4",
                   "--aux", "utility-max") == EXIT_OK
        details = fc.read_sweep_details(out)
        catalog, queries = fc.load_snapshot(snap)
        spec = fc.ObjectiveSpec(alpha=0.5, k=4, aux_mode=fc.AuxMode.UTILITY_MAX)
        by_buyer = {q.buyer: q for q in queries}
        for row in details:
            report = fc.solve_greedy(catalog, by_buyer[row["buyer_id"]], spec)
            s = catalog.stakeholder_names.index(row["stakeholder"])
            assert row["delta"] == report.deltas[s]
            assert row["F"] == pytest.approx(report.coverage_value, rel=1e-12)
            assert row["n_chosen"] == report.n_chosen

    def test_solve_rejects_alpha_grid(self, tmp_path):
        snap = gen_small(tmp_path)
        code = run("solve", "--input", str(snap), "--output", str(tmp_path / "x.csv"),
                   "--solver", "greedy", "--alpha", "0.2,0.8", "--k", "2")
        assert code == EXIT_VALIDATION

    def test_incompatible_solver_aux_fails_before_writing(self, tmp_path):
        snap = gen_small(tmp_path)
        out = tmp_path / "never.csv"
        code = run("sweep", "--input", str(snap), "--output", str(out),
                   "--solver", "distorted", "--alpha", "0.5", "--k", "3",
                   "--aux", "utility-max")
        assert code == EXIT_VALIDATION
        assert not out.exists()

    def test_sweep_sample_limits_buyers(self, tmp_path):
        snap = gen_small(tmp_path)
        out = tmp_path / "sampled.csv"
        assert run("sweep", "--input", str(snap), "--output", str(out),
                   "--solver", "lazy", "--alpha", "0,1", "--k", "3",
                   "--aux", "utility-max", "--sample", "2", "--seed", "3") == EXIT_OK
        details = fc.read_sweep_details(out)
        assert len({r["buyer_id"] for r in details}) == 2

    def test_sweep_parallelism_outputs_identical_mod_wall_time(self, tmp_path):
        snap = gen_small(tmp_path)

        def sweep(name, parallelism):
            out = tmp_path / name
            assert run("sweep", "--input", str(snap), "--output", str(out),
                       "--solver", "lazy", "--alpha", "0,0.5,1", "--k", "4",
                       "--aux", "utility-max", "--parallelism", parallelism) == EXIT_OK
            return out

        def masked(path):
            with open(path, newline="") as fh:
                rows = list(csv.reader(fh))
            column = rows[0].index("wall_time_us")
            for row in rows[1:]:
                row[column] = "-"
            return rows

        assert masked(sweep("p1.csv", "1")) == masked(sweep("p8.csv", "8"))

    def test_composite_aux_resolves_sign(self, tmp_path):
        snap = gen_small(tmp_path)
        out = tmp_path / "composite.csv"
        assert run("sweep", "--input", str(snap), "--output", str(out),
                   "--solver", "greedy", "--alpha", "0.5", "--k", "3",
                   "--aux", "composite", "--beta", "utility=1.0") == EXIT_OK
        assert fc.read_sweep_details(out)

    def test_composite_requires_beta(self, tmp_path):
        snap = gen_small(tmp_path)
        code = run("sweep", "--input", str(snap), "--output", str(tmp_path / "x.csv"),
                   "--solver", "greedy", "--alpha", "0.5", "--k", "3", "--aux", "composite")
        assert code == EXIT_VALIDATION


class TestBench:
    def test_single_item_instance_needs_one_call_everywhere(self, tmp_path):
        snap = gen_small(tmp_path, "one", **{"--n-items": "1", "--m-buyers": "1", "--t": "1"})
        out = tmp_path / "bench.csv"
        assert run("bench", "--input", str(snap), "--output", str(out),
                   "--alpha", "0.5", "--k", "1", "--trials", "1") == EXIT_OK
        with open(out, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 4
        assert all(float(r["mean_oracle_calls"]) == 1.0 for r in rows)

    def test_call_count_orderings_on_generated_profile(self, tmp_path):
        snap = gen_small(tmp_path, "bench", **{"--n-items": "400", "--m-buyers": "8",
                                               "--t": "5", "--seed": "42"})
        out = tmp_path / "bench.csv"
        assert run("bench", "--input", str(snap), "--output", str(out),
                   "--alpha", "0.5", "--k", "10", "--trials", "1") == EXIT_OK
        with open(out, newline="") as fh:
            calls = {r["solver"]: float(r["mean_oracle_calls"]) for r in csv.DictReader(fh)}
        assert calls["lazy"] < calls["greedy"]
        assert calls["stochastic"] < calls["distorted"]


def fair_snapshot(tmp_path):
    """Full-catalog candidate sets over a sparse catalog: alpha=1 solves are fair."""
    return gen_small(
        tmp_path, "fair",
        **{
            "--n-items": "100",
            "--m-buyers": "3",
            "--t": "5",
            "--membership-probs": "0.1,0.1,0.1,0.1,0.1",
            "--candidate-fraction": "1.0,1.0",
            "--seed": "5",
        },
    )


class TestVerify:
    def test_run_and_verify_fair_instance_exits_zero(self, tmp_path, capsys):
        snap = fair_snapshot(tmp_path)
        code = run("verify", "--input", str(snap), "--solver", "greedy",
                   "--alpha", "1.0", "--aux", "none", "--k", "20",
                   "--checks", "fairness,provider")
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "fairness: PASS" in out and "PASS" in out

    def test_report_verification_and_tampering(self, tmp_path, capsys):
        snap = fair_snapshot(tmp_path)
        report = tmp_path / "run.csv"
        assert run("sweep", "--input", str(snap), "--output", str(report),
                   "--solver", "greedy", "--alpha", "1.0", "--k", "20",
                   "--aux", "none") == EXIT_OK
        assert run("verify", "--input", str(snap), "--report", str(report),
                   "--k", "20") == EXIT_OK
        capsys.readouterr()

        # flip one delta to -1: fairness must fail, naming buyer and stakeholder
        with open(report, newline="") as fh:
            rows = list(csv.reader(fh))
        header = rows[0]
        target = next(
            r for r in rows[1:]
            if r[header.index("buyer_id")] != "__mean__" and int(r[header.index("delta")]) >= 0
        )
        buyer, stakeholder = target[header.index("buyer_id")], target[header.index("stakeholder")]
        target[header.index("delta")] = "-1"
        with open(report, "w", newline="") as fh:
            csv.writer(fh, lineterminator="\n").writerows(rows)
        code = run("verify", "--input", str(snap), "--report", str(report), "--k", "20")
        out = capsys.readouterr().out
        assert code == EXIT_VERIFICATION
        assert buyer in out and stakeholder in out

    def test_submodularity_spot_check_passes(self, tmp_path, capsys):
        snap = gen_small(tmp_path)
        code = run("verify", "--input", str(snap), "--checks", "submodularity",
                   "--triples", "500", "--k", "6", "--seed", "2")
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "submodularity: PASS (0 violations" in out

    def test_submodularity_ten_thousand_triples_on_default_profile(self, tmp_path, capsys):
        snap = tmp_path / "default"
        assert run("gen", "--output", str(snap), "--seed", "42") == EXIT_OK
        code = run("verify", "--input", str(snap), "--checks", "submodularity",
                   "--triples", "10000", "--k", "20", "--seed", "42")
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "submodularity: PASS (0 violations in 10000 triples)" in out

    def test_report_for_wrong_snapshot_is_pairing_error(self, tmp_path):
        snap = fair_snapshot(tmp_path)
        report = tmp_path / "run.csv"
        assert run("sweep", "--input", str(snap), "--output", str(report),
                   "--solver", "greedy", "--alpha", "1.0", "--k", "20",
                   "--aux", "none") == EXIT_OK
        other = gen_small(tmp_path, "other", **{"--seed": "99"})
        assert run("verify", "--input", str(other), "--report", str(report),
                   "--k", "20") == EXIT_VALIDATION


class TestExitCodes:
    def test_bad_alpha_is_validation_error(self, tmp_path):
        snap = gen_small(tmp_path)
        code = run("sweep", "--input", str(snap), "--output", str(tmp_path / "x.csv"),
                   "--solver", "greedy", "--alpha", "1.5", "--k", "2", "--aux", "none")
        assert code == EXIT_VALIDATION

    def test_unknown_solver_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run("sweep", "--input", "x", "--output", "y", "--solver", "simplex",
                "--alpha", "0.5")
        assert exc.value.code == EXIT_USAGE

    def test_unwritable_output_is_io_error(self, tmp_path):
        snap = gen_small(tmp_path)
        code = run("sweep", "--input", str(snap), "--output", str(tmp_path),
                   "--solver", "greedy", "--alpha", "0.5", "--k", "2",
                   "--aux", "none")
        assert code == EXIT_IO

    def test_missing_snapshot_is_validation_error(self, tmp_path):
        code = run("sweep", "--input", str(tmp_path / "missing"),
                   "--output", str(tmp_path / "x.csv"),
                   "--solver", "greedy", "--alpha", "0.5", "--k", "2", "--aux", "none")
        assert code == EXIT_VALIDATION
