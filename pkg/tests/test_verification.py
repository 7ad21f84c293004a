"""
Verification suites, tracker and console report
"""

import math

import pytest

from ncho.verification import (
    DEFAULT_TOLERANCES,
    SUITES,
    SuiteResult,
    SuiteTracker,
    VerificationReport,
    VerifyOptions,
    run_suites,
)


class TestSuiteTracker:
    """Tests for residual bookkeeping"""

    def test_mark_case(self):
        tracker = SuiteTracker()
        assert tracker.mark_case("laguerre", "a", 1e-12, 1e-10)
        assert not tracker.mark_case("laguerre", "b", 1e-9, 1e-10)
        assert not tracker.mark_case("laguerre", "c", math.nan, 1e-10)
        assert [case["label"] for case in tracker.failures("laguerre")] == ["b", "c"]

    def test_summaries(self):
        tracker = SuiteTracker()
        tracker.mark_case("ep-residual", "t=0", 1e-14, 1e-10)
        tracker.mark_case("ep-residual", "t=1", math.inf, 1e-10)
        tracker.mark_case("chiellini", "q", 1e-15, 1e-12)

        suite = tracker.get_suite_summary("ep-residual")
        assert suite["cases"] == 2
        assert suite["failures"] == 1
        assert suite["max_residual"] == math.inf

        summary = tracker.get_summary()
        assert summary == {"suites": 2, "cases": 3, "failed_cases": 1, "pass_percent": 66.7}

    def test_repeated_labels_counted(self):
        tracker = SuiteTracker()
        tracker.mark_case("expectation", "n=1", 1e-12, 1e-8)
        tracker.mark_case("expectation", "n=1", 1e-3, 1e-8)
        summary = tracker.get_summary()
        assert summary["cases"] == 2
        assert summary["failed_cases"] == 1
        assert summary["pass_percent"] == 50.0
        assert tracker.get_suite_summary("expectation")["cases"] == summary["cases"]

    def test_empty_summary(self):
        assert SuiteTracker().get_summary()["pass_percent"] == 0


class TestRunSuites:
    """Tests for suite selection and results"""

    def test_registry_matches_tolerances(self):
        assert list(SUITES) == list(DEFAULT_TOLERANCES)

    def test_unknown_suite(self):
        with pytest.raises(KeyError):
            run_suites(["laguerre", "bogus"])

    @pytest.mark.parametrize("name", ["laguerre", "chiellini", "appendix-a", "energy-assembly", "ep-residual"])
    def test_fast_suites_pass(self, name):
        [result] = run_suites([name])
        assert result.passed, f"{name}: max residual {result.max_residual:.3e}, failures {result.failures[:3]}"
        assert result.cases > 0
        assert result.tolerance == DEFAULT_TOLERANCES[name]

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["orthonormality", "expectation", "nc-roundtrip"])
    def test_quadrature_suites_pass(self, name, quad_margin):
        [result] = run_suites([name], options=VerifyOptions(margin=quad_margin))
        assert result.passed, f"{name}: max residual {result.max_residual:.3e}, failures {result.failures[:3]}"

    @pytest.mark.slow
    def test_invariance_suite_passes(self, matrix_dim):
        [result] = run_suites(["invariance"], options=VerifyOptions(matrix_dim=matrix_dim))
        assert result.passed, f"max residual {result.max_residual:.3e}"

    @pytest.mark.parametrize("name", ["ep-residual", "chiellini"])
    def test_perturbation_detected(self, name):
        [result] = run_suites([name], options=VerifyOptions(perturb=1e-3))
        assert not result.passed
        assert result.failures

    def test_tolerance_override(self):
        [result] = run_suites(["laguerre"], tolerances={"laguerre": 1e-300})
        assert result.tolerance == 1e-300
        assert not result.passed

    def test_shared_tracker(self):
        tracker = SuiteTracker()
        run_suites(["laguerre", "appendix-a"], tracker=tracker)
        assert tracker.get_summary()["suites"] == 2


class TestVerificationReport:
    """Tests for the console report"""

    def test_passing_report(self, capsys):
        results = [SuiteResult(name="laguerre", tolerance=1e-10, max_residual=1e-15, cases=10)]
        VerificationReport.print_summary(results, {"suites": 1, "cases": 10, "failed_cases": 0, "pass_percent": 100.0})
        out = capsys.readouterr().out
        assert "✓ laguerre" in out
        assert "Checked 10 cases in 1 suites" in out

    def test_failing_report_truncates(self, capsys):
        failures = [{"label": f"case {i}", "residual": 1.0, "passed": False} for i in range(8)]
        results = [SuiteResult(name="chiellini", tolerance=1e-12, max_residual=1.0, cases=8, failures=failures)]
        VerificationReport.print_summary(results)
        out = capsys.readouterr().out
        assert "✗ chiellini" in out
        assert "case 4" in out
        assert "case 5" not in out
        assert "... and 3 more" in out

    def test_aborted_suite(self, capsys):
        results = [SuiteResult(name="expectation", tolerance=1e-8, max_residual=0.0, cases=0, error="DomainError: boom")]
        assert not results[0].passed
        VerificationReport.print_summary(results)
        assert "DomainError: boom" in capsys.readouterr().out

    def test_no_results(self, capsys):
        VerificationReport.print_summary([])
        assert "No suites were run" in capsys.readouterr().out
