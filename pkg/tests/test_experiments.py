"""
Tests for the experiment runners, report models and report serialization.
"""

import csv
import json

import pytest
from pydantic import ValidationError

from lie_qrt.errors import InvalidInputError, InvariantViolationError, MarginViolationError, UsageError
from lie_qrt.experiments.output import meta_path_for, report_meta, summary_line, write_csv, write_json, write_report
from lie_qrt.experiments.runners import (
    COLUMNS,
    run_closed_form_scan,
    run_experiment,
    run_fig2,
    run_fig3,
    run_structures_suite,
    run_thm1,
    run_verify,
)
from lie_qrt.experiments.schemas import ExperimentConfig, ExperimentReport, TrialRecord


def _config(**kwargs) -> ExperimentConfig:
    return ExperimentConfig(**kwargs)


class TestConfig:
    def test_defaults(self):
        cfg = _config(experiment="fig3")
        assert cfg.spin == 5.0
        assert cfg.steps == 5
        assert cfg.rep_label == "su2(s=5)"

    def test_half_integer_spin(self):
        assert _config(experiment="fig2", spin=2.5).rep_label == "su2(s=2.5)"
        with pytest.raises(ValidationError):
            _config(experiment="fig2", spin=2.3)

    def test_ranges(self):
        with pytest.raises(ValidationError):
            _config(experiment="fig3", steps=13)
        with pytest.raises(ValidationError):
            _config(experiment="fig3", rep_kind="so2n", modes=11)
        with pytest.raises(ValidationError):
            _config(experiment="fig3", rep_kind="local", local_dims=(4, 5))
        with pytest.raises(ValidationError):
            _config(experiment="scan", alpha_grid="1:0")

    def test_frozen(self):
        cfg = _config(experiment="thm1")
        with pytest.raises(ValidationError):
            cfg.trials = 3


class TestThm1:
    @pytest.mark.parametrize("rep_kind, extra", [("su2", {"spin": 2.0}), ("so2n", {"modes": 3}),
                                                 ("local", {"local_dims": (2, 3)})])
    def test_images_are_free(self, rep_kind, extra):
        report = run_thm1(_config(experiment="thm1", rep_kind=rep_kind, trials=6,
                                  cfo_scale=0.5, epsilon=0.05, steps=2, **extra))
        assert report.violation_count == 0
        assert report.summary.max_deviation < 1e-8
        assert report.summary.extra["min_channel_purity"] == pytest.approx(1.0, abs=1e-8)
        assert [row["trial"] for row in report.rows] == list(range(6))

    def test_zero_scale(self):
        report = run_thm1(_config(experiment="thm1", trials=4, cfo_scale=0.0, epsilon=0.0))
        for row in report.rows:
            assert row["purity_image"] == pytest.approx(1.0, abs=1e-12)


class TestFig2:
    def test_bound_holds(self):
        report = run_fig2(_config(experiment="fig2", spin=2.0, trials=20))
        assert report.violation_count == 0
        assert report.summary.extra["m_values"] == [0.0, 1.0, 2.0]
        assert report.summary.extra["max_deviation_at_m_eq_s"] < 1e-8
        assert len(report.rows) == 60
        assert [row["m"] for row in report.rows[:20]] == [0.0] * 20

    def test_explicit_weights(self):
        report = run_fig2(_config(experiment="fig2", spin=1.5, trials=5, m_values=[1.5, 0.5]))
        assert report.summary.extra["m_values"] == [0.5, 1.5]

    def test_invalid_weight(self):
        with pytest.raises(InvalidInputError):
            run_fig2(_config(experiment="fig2", spin=2.0, trials=2, m_values=[0.5]))

    def test_needs_su2(self):
        with pytest.raises(InvalidInputError):
            run_fig2(_config(experiment="fig2", rep_kind="so2n", trials=2))


class TestFig3:
    def test_zero_strength_has_zero_margin(self):
        report = run_fig3(_config(experiment="fig3", rep_kind="so2n", modes=2, trials=8, epsilon=0.0))
        assert abs(report.summary.min_margin) < 1e-12
        for row in report.rows:
            assert row["min_pk"] == pytest.approx(1 / 32)

    def test_rows_sorted_by_initial_purity(self):
        report = run_fig3(_config(experiment="fig3", spin=2.0, trials=10, epsilon=0.1, steps=3))
        before = [row["purity_before"] for row in report.rows]
        assert before == sorted(before)
        assert sorted(row["trial"] for row in report.rows) == list(range(10))

    def test_worker_count_does_not_change_rows(self):
        serial = run_fig3(_config(experiment="fig3", rep_kind="local", local_dims=(2, 2),
                                  trials=12, epsilon=0.1, steps=3, seed=9))
        parallel = run_fig3(_config(experiment="fig3", rep_kind="local", local_dims=(2, 2),
                                    trials=12, epsilon=0.1, steps=3, seed=9, workers=3))
        assert serial.rows == parallel.rows

    def test_seed_changes_rows(self):
        a = run_fig3(_config(experiment="fig3", spin=1.0, trials=3, seed=1))
        b = run_fig3(_config(experiment="fig3", spin=1.0, trials=3, seed=2))
        assert a.rows != b.rows


class TestScan:
    def test_small_grid(self):
        report = run_closed_form_scan(_config(experiment="scan", spin=2.5, alpha_grid="-1:1:3",
                                              eta_grid="0:2:4", workers=2))
        assert report.summary.extra["grid_shape"] == [3, 3, 4]
        assert len(report.rows) == 36
        assert report.violation_count == 0
        assert report.summary.max_deviation < 1e-8

    def test_negative_eta_grid(self):
        with pytest.raises(InvalidInputError):
            run_closed_form_scan(_config(experiment="scan", spin=1.0, eta_grid="-1:1:3"))


def test_structures_suite_passes():
    report = run_structures_suite(_config(experiment="structures"))
    assert report.violation_count == 0
    assert all(row["passed"] for row in report.rows)
    assert {row["claim"] for row in report.rows} >= {"pauli_closure", "clifford_automorphism",
                                                     "ring_automorphism", "thermal_commutant",
                                                     "local_algebra"}
    assert any(row["expected"] is False for row in report.rows)


def test_verify_suite_passes():
    report = run_verify(_config(experiment="verify"))
    assert report.summary.extra["failed"] == []


def test_run_experiment_dispatch():
    report = run_experiment(_config(experiment="structures"))
    assert report.columns == COLUMNS["structures"]


class TestReportViolations:
    def _report(self, experiment, record):
        return ExperimentReport(config=_config(experiment=experiment), columns=COLUMNS[experiment],
                                records=[TrialRecord(trial=0), record])

    def test_clean_report(self):
        ExperimentReport(config=_config(experiment="thm1"), columns=["trial"]).raise_for_violations(1e-8)

    def test_margin_violation(self):
        report = self._report("fig3", TrialRecord(trial=4, margin=-1e-3, violation=True))
        assert report.violation_count == 1
        with pytest.raises(MarginViolationError) as info:
            report.raise_for_violations(1e-8)
        assert info.value.trial == 4

    def test_other_violation(self):
        report = self._report("thm1", TrialRecord(trial=2, violation=True, detail="P=0.9"))
        with pytest.raises(InvariantViolationError, match="trial 2"):
            report.raise_for_violations(1e-8)


class TestOutput:
    @pytest.fixture
    def report(self):
        return run_fig3(_config(experiment="fig3", spin=1.0, trials=4, epsilon=0.05, steps=2))

    def test_csv_layout(self, report, tmp_path):
        path = write_csv(report, tmp_path / "fig3.csv")
        with path.open(newline="", encoding="utf-8") as fh:
            assert fh.readline().rstrip("\r\n") == ",".join(COLUMNS["fig3"])
        with path.open(newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
        assert list(rows[0]) == COLUMNS["fig3"]
        assert len(rows) == 4
        meta = json.loads(meta_path_for(path).read_text(encoding="utf-8"))
        assert meta["schema_version"] == "1"
        assert meta["seed"] == 0
        assert meta["config"]["steps"] == 2
        assert meta["columns"] == COLUMNS["fig3"]

    def test_meta_sidecar_name(self, tmp_path):
        assert meta_path_for(tmp_path / "fig3.csv") == tmp_path / "fig3.csv.meta.json"

    def test_csv_is_reproducible(self, tmp_path):
        cfg = _config(experiment="fig3", spin=1.0, trials=4, epsilon=0.05, steps=2, seed=3)
        first = write_csv(run_fig3(cfg), tmp_path / "a.csv")
        second = write_csv(run_fig3(cfg), tmp_path / "b.csv")
        assert first.read_bytes() == second.read_bytes()
        assert meta_path_for(first).read_bytes() == meta_path_for(second).read_bytes()

    def test_json_layout(self, report, tmp_path):
        data = json.loads(write_json(report, tmp_path / "fig3.json").read_text(encoding="utf-8"))
        assert set(data) == {"meta", "rows"}
        assert data["meta"]["columns"] == COLUMNS["fig3"]
        assert "generated_at" in data["meta"]["run"]
        assert len(data["rows"]) == 4

    def test_unknown_format(self, report, tmp_path):
        with pytest.raises(UsageError):
            write_report(report, tmp_path / "x.txt", "xml")

    def test_summary_line(self, report):
        line = summary_line(report)
        assert line.startswith("fig3 su2(s=1)")
        assert "violations=0" in line

    def test_summary_line_without_rep(self):
        report = run_structures_suite(_config(experiment="structures"))
        line = summary_line(report)
        assert line.startswith("structures rows=")
        assert "su2" not in line
        assert report_meta(report)["rep"] is None


@pytest.mark.slow
@pytest.mark.parametrize("rep_kind, extra", [("su2", {"spin": 5.0}), ("so2n", {"modes": 8}),
                                             ("local", {"local_dims": (2, 2)}),
                                             ("local", {"local_dims": (3, 3)})])
def test_fig3_full_size(rep_kind, extra):
    report = run_fig3(_config(experiment="fig3", rep_kind=rep_kind, trials=150, workers=4, **extra))
    assert report.summary.min_margin >= -1e-8
