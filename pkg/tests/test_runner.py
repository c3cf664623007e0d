import pytest

from octo_cr.core.config import settings
from octo_cr.core.exceptions import ValidationError
from octo_cr.verification import algebra, integral, runner, solutions, systems
from octo_cr.verification.base import Check, SuiteContext
from octo_cr.verification.runner import (
    SUITE_ORDER,
    available_suites,
    default_samples,
    resolve_samples,
    resolve_seed,
    resolve_suites,
    run_suite,
)


class TestResolution:
    def test_suites(self):
        assert available_suites()[-1] == "all"
        assert resolve_suites("all") == list(SUITE_ORDER)
        assert resolve_suites("forms") == ["forms"]

    def test_unknown_suite(self):
        with pytest.raises(ValidationError) as exc:
            resolve_suites("geometry")
        assert exc.value.error_code == "unknown_suite"

    def test_seed_precedence(self, monkeypatch):
        assert resolve_seed(7) == 7
        monkeypatch.setattr(settings, "SEED", 99)
        assert resolve_seed() == 99
        assert resolve_seed(0) == 0
        monkeypatch.setattr(settings, "SEED", None)
        assert resolve_seed() == settings.DEFAULT_SEED

    def test_samples_override_primary_count_only(self):
        samples = resolve_samples("forms", 5)
        assert samples["forms"] == 5
        assert samples["orthogonal_maps"] == settings.ORTHOGONAL_MAPS
        assert default_samples("integral") == {"integral": settings.INTEGRAL_SAMPLES}
        assert resolve_samples("systems", 3)[systems.FD_POINTS_KEY] == settings.FD_POINTS

    def test_bad_samples(self):
        with pytest.raises(ValidationError) as exc:
            resolve_samples("algebra", 0)
        assert exc.value.error_code == "bad_samples"

    def test_bad_workers(self):
        with pytest.raises(ValidationError):
            run_suite("algebra", seed=1, samples=5, workers=0)


class TestRunSuite:
    def test_records_follow_declaration_order(self):
        report = run_suite("algebra", seed=3, samples=10, workers=4)
        assert [r.name for r in report.records] == [c.name for c in algebra.checks()]

    @pytest.mark.parametrize("suite", ["algebra", "forms", "systems", "solutions"])
    def test_small_runs_pass(self, suite):
        report = run_suite(suite, seed=11, samples=4)
        assert report.all_passed, [r.name for r in report.failed_records()]
        assert report.suite == suite and report.seed == 11

    def test_finite_differences_cover_all_fields_at_default_counts(self):
        ratio, detail = solutions.finite_differences(SuiteContext(seed=5, samples=default_samples("solutions")))
        assert detail["points"] == settings.SOLUTION_POINTS
        assert ratio <= 1.0, detail

        ratio, detail = systems.finite_differences(SuiteContext(seed=5, samples=default_samples("systems")))
        assert detail["fields"] == settings.SYSTEM_FIELDS
        assert detail["points"] == settings.FD_POINTS
        assert ratio <= 1.0, detail

    def test_same_inputs_give_identical_reports(self):
        first = run_suite("algebra", seed=5, samples=8, workers=1).to_json()
        second = run_suite("algebra", seed=5, samples=8, workers=4).to_json()
        assert first == second

    def test_seed_changes_the_report(self):
        first = run_suite("algebra", seed=5, samples=8).to_json()
        second = run_suite("algebra", seed=6, samples=8).to_json()
        assert first != second

    def test_timings_are_opt_in(self):
        plain = run_suite("algebra", seed=1, samples=4)
        timed = run_suite("algebra", seed=1, samples=4, timings=True)
        assert all(r.runtime_ms is None for r in plain.records)
        assert all(r.runtime_ms is not None and r.runtime_ms >= 0 for r in timed.records)

    def test_integral_suite_shape(self):
        report = run_suite("integral", seed=2, samples=2_000)
        names = [r.name for r in report.records]
        assert names == [c.name for c in integral.checks()]
        assert "integral.reproduce.fueter-1" in names
        assert "integral.reproduce.fueter-1.at_0.3e0" in names
        assert "integral.reproduce.biaxial-z.at_0.2e1+0.1e4" in names
        fueter = report.records[names.index("integral.reproduce.fueter-1")]
        assert fueter.detail["points"] == integral.REPRODUCTION_POINTS == 5
        closed_form = report.records[0]
        assert closed_form.name == "integral.omega8.closed_form" and closed_form.passed


class TestCheckErrors:
    def test_exception_becomes_failed_record(self, monkeypatch):
        def boom(ctx):
            raise ValueError("broken")

        monkeypatch.setitem(runner.SUITES, "algebra", lambda: [Check("algebra.broken", boom, 1.0)])
        report = run_suite("algebra", seed=1, samples=2)
        record = report.records[0]
        assert not record.passed
        assert record.max_residual is None
        assert record.detail == {"error": "ValueError", "message": "broken"}
