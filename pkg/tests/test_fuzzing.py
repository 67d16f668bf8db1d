"""Tests for the fuzzing harness: determinism, CSV schema, soundness."""

import io
import math

import pytest

from hadafrac.errors import DomainError
from hadafrac.fuzzing import (
    CSV_HEADER,
    FuzzConfig,
    RunSummary,
    TrialResult,
    csv_text,
    format_csv_row,
    run_fuzz,
    run_trial,
    trial_seed,
)
from hadafrac.inequalities import TheoremId

ALL_CHECKS = list(TheoremId)


def small_run(theorem_id, trials=40, master_seed=7734):
    config = FuzzConfig(theorem_id=theorem_id, trials=trials, master_seed=master_seed)
    return run_fuzz(config)


class TestDeterminism:
    def test_identical_configs_give_identical_csv(self):
        for theorem in (TheoremId.T31, TheoremId.T34, TheoremId.POWMEAN):
            config = FuzzConfig(theorem_id=theorem, trials=25, master_seed=42)
            _, results_a = run_fuzz(config)
            _, results_b = run_fuzz(config)
            assert csv_text(results_a) == csv_text(results_b)

    def test_streamed_and_collected_csv_agree(self):
        config = FuzzConfig(theorem_id=TheoremId.T32, trials=15, master_seed=3)
        stream = io.StringIO()
        _, results = run_fuzz(config, csv_file=stream)
        assert stream.getvalue() == csv_text(results)

    def test_trial_is_reproducible_from_its_seed(self):
        config = FuzzConfig(theorem_id=TheoremId.T33, trials=20, master_seed=99)
        _, results = run_fuzz(config)
        probe = results[7]
        seed = trial_seed(99, 7)
        assert probe.report.seed == seed
        report, kinked = run_trial(TheoremId.T33, seed)
        assert report.lhs == probe.report.lhs
        assert report.bound == probe.report.bound
        assert report.params == probe.report.params
        assert kinked == probe.kinked

    def test_different_master_seeds_differ(self):
        _, a = small_run(TheoremId.T31, trials=5, master_seed=1)
        _, b = small_run(TheoremId.T31, trials=5, master_seed=2)
        assert csv_text(a) != csv_text(b)

    def test_trial_seed_wraps_into_63_bits(self):
        assert trial_seed(2**63 - 1, 5) == 4
        assert trial_seed(0, 12) == 12


class TestSoundness:
    @pytest.mark.parametrize("theorem", ALL_CHECKS, ids=[t.value for t in ALL_CHECKS])
    def test_no_violations_in_small_runs(self, theorem):
        summary, results = small_run(theorem, trials=200)
        assert isinstance(summary, RunSummary)
        assert summary.failures == 0, (
            f"{theorem.value}: worst ratio {summary.worst_ratio!r} "
            f"at seed {summary.worst_seed}"
        )
        assert summary.passes + summary.failures == summary.trials_run
        assert summary.trials_run == 200
        assert summary.wall_time > 0.0

    def test_saturating_trials_occur_and_hit_ratio_one(self):
        for theorem in (TheoremId.T31, TheoremId.P31, TheoremId.YOUNG, TheoremId.POWMEAN):
            _, results = small_run(theorem, trials=200)
            best = max(r.report.ratio for r in results)
            assert best == pytest.approx(1.0, abs=1e-10), theorem

    def test_both_kinked_and_smooth_trials_appear(self):
        _, results = small_run(TheoremId.T31, trials=200)
        kinds = {r.kinked for r in results}
        assert kinds == {True, False}

    def test_worst_ratio_matches_results(self):
        summary, results = small_run(TheoremId.T32, trials=50)
        assert summary.worst_ratio == max(r.report.ratio for r in results)
        assert any(
            r.report.seed == summary.worst_seed
            and r.report.ratio == summary.worst_ratio
            for r in results
        )


class TestCsvSchema:
    def test_header_is_exact(self):
        assert CSV_HEADER == "theorem,alpha,beta,t,p,q,seed,lhs,bound,ratio,margin,pass"
        text = csv_text([])
        assert text == CSV_HEADER + "\n"

    def test_row_shape_and_round_trip(self):
        _, results = small_run(TheoremId.T34, trials=10)
        for result in results:
            row = format_csv_row(result.report)
            fields = row.split(",")
            assert len(fields) == 12
            assert fields[0] == "T34"
            assert float(fields[7]) == result.report.lhs
            assert float(fields[8]) == result.report.bound
            assert float(fields[9]) == result.report.ratio
            assert float(fields[10]) == result.report.margin
            assert int(fields[6]) == result.report.seed
            assert fields[11] in ("true", "false")

    def test_lf_line_endings_only(self):
        _, results = small_run(TheoremId.P32, trials=5)
        text = csv_text(results)
        assert "\r" not in text
        assert text.count("\n") == 6

    def test_single_order_checks_leave_beta_empty(self):
        _, results = small_run(TheoremId.T31, trials=3)
        for result in results:
            fields = format_csv_row(result.report).split(",")
            assert fields[1] != ""
            assert fields[2] == ""
            assert fields[4] == ""
            assert fields[5] == ""

    def test_two_order_checks_fill_beta(self):
        _, results = small_run(TheoremId.P33, trials=3)
        for result in results:
            fields = format_csv_row(result.report).split(",")
            assert fields[2] != ""

    def test_powmean_exponent_rides_in_p_column(self):
        _, results = small_run(TheoremId.POWMEAN, trials=5)
        for result in results:
            fields = format_csv_row(result.report).split(",")
            assert float(fields[4]) == result.report.params["r"]
            assert fields[5] == ""

    def test_holder_checks_fill_both_exponents(self):
        _, results = small_run(TheoremId.YOUNG, trials=5)
        for result in results:
            fields = format_csv_row(result.report).split(",")
            p, q = float(fields[4]), float(fields[5])
            assert 1.0 / p + 1.0 / q == pytest.approx(1.0, abs=1e-12)


class TestConfigValidation:
    def test_theorem_id_coercion_from_string(self):
        config = FuzzConfig(theorem_id="T31", trials=1)
        assert config.theorem_id is TheoremId.T31

    def test_unknown_theorem_rejected(self):
        with pytest.raises(ValueError):
            FuzzConfig(theorem_id="T99", trials=1)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"trials": 0},
            {"alpha_range": (0.01, 1.0)},
            {"alpha_range": (1.0, 0.5)},
            {"beta_range": (0.05, 1.0)},
            {"t_range": (1.0, 2.0)},
            {"t_range": (3.0, 2.0)},
            {"nodes": 1},
        ],
    )
    def test_bad_parameters_rejected(self, kwargs):
        with pytest.raises(DomainError):
            FuzzConfig(theorem_id=TheoremId.T31, **{"trials": 5, **kwargs})

    def test_config_is_frozen(self):
        config = FuzzConfig(theorem_id=TheoremId.T31, trials=1)
        with pytest.raises(AttributeError):
            config.trials = 7

    def test_trial_results_are_frozen(self):
        _, results = small_run(TheoremId.T31, trials=2)
        assert isinstance(results[0], TrialResult)
        with pytest.raises(AttributeError):
            results[0].kinked = True
