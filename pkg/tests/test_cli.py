"""
Tests for the command-line interface.
"""

import io
import json
import math

import pandas as pd
import pytest
from click.testing import CliRunner

from planar_exit_times.conformal import ngram_radii
from planar_exit_times.main import EXIT_FAILURE, EXIT_PRECONDITION, EXIT_USAGE, EXIT_VERIFY, cli, collect_estimates
from planar_exit_times.monitoring import MetricsCollector, RunLogger
from planar_exit_times.schemas.models import Point2, RunMethod, RunRequest, Subcommand
from planar_exit_times.utils.verification import CheckResult, IdentityChecker

QUIET = ["--log-level", "ERROR"]
DISC_POINT = ["--domain", "disc:r0=1", "--point", "0.3,0.4"]
FAST_MC = ["--paths", "300", "--seed", "1", "--shell", "1e-4"]


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, QUIET + list(args))


def read_csv(output):
    return pd.read_csv(io.StringIO(output))


class TestExitTime:
    """Test the exit-time command."""

    @pytest.mark.parametrize("method", ["series", "closed", "green"])
    def test_single_method_csv(self, runner, method):
        """Test one deterministic method on the disc."""
        result = invoke(runner, "exit-time", *DISC_POINT, "--method", method)
        assert result.exit_code == 0, result.output
        frame = read_csv(result.output)
        assert list(frame.columns) == ["method", "value", "error", "count", "status", "note"]
        assert frame["method"].tolist() == [method]
        assert frame["value"].iloc[0] == pytest.approx(0.375, rel=1e-10)
        assert frame["status"].iloc[0] == "ok"

    def test_all_methods_json(self, runner):
        """Test every method in one JSON document."""
        result = invoke(runner, "exit-time", *DISC_POINT, *FAST_MC, "--output", "json")
        assert result.exit_code == 0, result.output
        document = json.loads(result.output)
        assert document["schema"] == 1
        assert document["command"] == "exit-time"
        assert document["point"] == {"x": 0.3, "y": 0.4}
        methods = [row["method"] for row in document["rows"]]
        assert methods == ["series", "closed", "green", "mc"]
        mc = document["rows"][-1]
        assert mc["count"] == 300
        assert abs(mc["value"] - 0.375) < 5.0 * mc["error"] + 1e-6

    def test_lens_centre(self, runner):
        """Test the closed centre value of the lens."""
        result = invoke(runner, "exit-time", "--domain", "lens", "--point", "0,0", "--method", "closed",
                        "--output", "json")
        assert result.exit_code == 0, result.output
        rows = json.loads(result.output)["rows"]
        assert rows[0]["value"] == pytest.approx(2.0 / math.pi - 0.5, rel=1e-10)

    def test_uncovered_methods_skipped(self, runner):
        """Test that methods without a route are left out under all."""
        result = invoke(runner, "exit-time", "--domain", "lens", "--point", "0.1,0", *FAST_MC, "--output", "json")
        assert result.exit_code == 0, result.output
        assert [row["method"] for row in json.loads(result.output)["rows"]] == ["mc"]

    def test_environment_settings_reach_simulation(self, runner, monkeypatch):
        """Test that EXIT_TIMES_* Monte Carlo settings size the simulation."""
        monkeypatch.setenv("EXIT_TIMES_PATHS", "250")
        monkeypatch.setenv("EXIT_TIMES_SHELL", "1e-4")
        result = invoke(runner, "exit-time", *DISC_POINT, "--method", "mc", "--output", "json")
        assert result.exit_code == 0, result.output
        assert json.loads(result.output)["rows"][0]["count"] == 250

    def test_option_overrides_environment(self, runner, monkeypatch):
        """Test that --paths wins over EXIT_TIMES_PATHS."""
        monkeypatch.setenv("EXIT_TIMES_PATHS", "250")
        result = invoke(runner, "exit-time", *DISC_POINT, *FAST_MC, "--method", "mc", "--output", "json")
        assert result.exit_code == 0, result.output
        assert json.loads(result.output)["rows"][0]["count"] == 300

    def test_max_terms_bounds_unit_sum(self, runner, monkeypatch):
        """Test that EXIT_TIMES_MAX_TERMS caps the pentagon centre series."""
        monkeypatch.setenv("EXIT_TIMES_MAX_TERMS", "100")
        result = invoke(runner, "exit-time", "--domain", "polygon:m=5", "--point", "0,0", "--method", "closed")
        assert result.exit_code == EXIT_FAILURE

    def test_divergent_wedge(self, runner):
        """Test that a wide wedge is reported as divergence-suspected with a null error."""
        result = invoke(runner, "exit-time", "--domain", "wedge:p=0.75", "--point", "1,0", "--method", "series",
                        "--output", "json")
        assert result.exit_code == 0, result.output
        row = json.loads(result.output)["rows"][0]
        assert row["status"] == "divergence-suspected"
        assert row["error"] is None
        assert row["value"] > 0.0


class TestCompare:
    """Test the compare command."""

    def test_csv(self, runner):
        """Test pairwise discrepancies of all four methods."""
        result = invoke(runner, "compare", *DISC_POINT, *FAST_MC)
        assert result.exit_code == 0, result.output
        frame = read_csv(result.output)
        assert list(frame.columns) == ["first", "second", "difference", "sigmas", "within"]
        assert len(frame) == 6
        deterministic = frame[(frame["first"] != "mc") & (frame["second"] != "mc")]
        assert deterministic["difference"].abs().max() < 1e-9
        assert deterministic["sigmas"].isna().all()
        assert frame[frame["second"] == "mc"]["sigmas"].notna().all()

    def test_json(self, runner):
        """Test the JSON document of compare."""
        result = invoke(runner, "compare", *DISC_POINT, "--method", "all", *FAST_MC, "--output", "json")
        assert result.exit_code == 0, result.output
        document = json.loads(result.output)
        assert document["command"] == "compare"
        assert len(document["rows"]) == 4
        assert len(document["discrepancies"]) == 6


class TestField:
    """Test the field command."""

    def test_disc_grid(self, runner):
        """Test the disc field on a 5x5 grid: NaN outside, zero on the circle."""
        result = invoke(runner, "field", "--domain", "disc:r0=1", "--grid", "5")
        assert result.exit_code == 0, result.output
        frame = read_csv(result.output)
        assert list(frame.columns) == ["x", "y", "u"]
        assert len(frame) == 25
        centre = frame[(frame["x"] == 0.0) & (frame["y"] == 0.0)]
        assert centre["u"].iloc[0] == pytest.approx(0.5)
        corner = frame[(frame["x"] == 1.0) & (frame["y"] == 1.0)]
        assert math.isnan(corner["u"].iloc[0])
        edge = frame[(frame["x"] == 1.0) & (frame["y"] == 0.0)]
        assert edge["u"].iloc[0] == 0.0

    def test_grid_too_small(self, runner):
        """Test that a grid needs two points per axis."""
        result = invoke(runner, "field", "--domain", "disc", "--grid", "1")
        assert result.exit_code == EXIT_USAGE

    def test_no_field(self, runner):
        """Test that domains without a closed-form field fail."""
        result = invoke(runner, "field", "--domain", "lens")
        assert result.exit_code == EXIT_PRECONDITION


class TestRadii:
    """Test the radii command."""

    def test_csv(self, runner):
        """Test the vertex radii of a pentagram."""
        result = invoke(runner, "radii", "--domain", "ngram:n=5,mu1=0.3,mu2=0.1")
        assert result.exit_code == 0, result.output
        frame = read_csv(result.output)
        expected = ngram_radii(5, 0.3, 0.1)
        assert frame["circumradius"].iloc[0] == pytest.approx(expected.circumradius, rel=1e-10)
        assert frame["inradius"].iloc[0] == pytest.approx(expected.inradius, rel=1e-10)

    def test_json(self, runner):
        """Test the JSON document of radii."""
        result = invoke(runner, "radii", "--domain", "ngram:n=2,mu1=0.5,mu2=0.5", "--output", "json")
        assert result.exit_code == 0, result.output
        document = json.loads(result.output)
        assert document["radii"]["circumradius"] == pytest.approx(1.31102877714606, rel=1e-9)

    def test_not_ngram(self, runner):
        """Test that radii needs an n-gram."""
        result = invoke(runner, "radii", "--domain", "disc")
        assert result.exit_code == EXIT_PRECONDITION


class TestVerify:
    """Test the verify command."""

    def test_selected_checks(self, runner):
        """Test a subset of the identity suite."""
        result = invoke(runner, "verify", "--check", "gauss-summation", "--check", "disc-green", "--output", "json")
        assert result.exit_code == 0, result.output
        checks = json.loads(result.output)["checks"]
        assert [c["name"] for c in checks] == ["gauss-summation", "disc-green"]
        assert all(c["passed"] for c in checks)

    def test_unknown_check(self, runner):
        """Test that unknown check names are a usage error."""
        result = invoke(runner, "verify", "--check", "no-such-check")
        assert result.exit_code == EXIT_USAGE

    def test_full_suite_passes(self, runner):
        """Test that the whole identity suite passes with exit status 0."""
        result = invoke(runner, "verify", "--output", "json")
        assert result.exit_code == 0, result.output
        checks = json.loads(result.output)["checks"]
        assert len(checks) == 21
        assert [c["name"] for c in checks if not c["passed"]] == []
        lens = next(c for c in checks if c["name"] == "lens-centre")
        assert lens["known_issue"]

    def test_failure_exit_code(self, runner, monkeypatch):
        """Test exit status 4 on a failed check, annotated or not."""
        monkeypatch.setattr(IdentityChecker, "_initialize_checks", lambda self: {
            "always-fails": lambda: CheckResult(name="always-fails", passed=False, residual=1.0, tolerance=0.0),
        })
        result = invoke(runner, "verify")
        assert result.exit_code == EXIT_VERIFY

        monkeypatch.setattr(IdentityChecker, "_initialize_checks", lambda self: {
            "documented": lambda: CheckResult(name="documented", passed=False, residual=1.0, tolerance=0.0,
                                              known_issue=True),
        })
        result = invoke(runner, "verify")
        assert result.exit_code == EXIT_VERIFY


class TestEstimateGauges:
    """Test the gauges recorded for each estimate."""

    def test_value_and_count_gauges(self):
        """Test that every estimate sets value and count gauges labelled by domain and method."""
        request = RunRequest(subcommand=Subcommand.EXIT_TIME, domain="disc:r0=1", point=Point2(x=0.3, y=0.4),
                             method=RunMethod.SERIES)
        metrics = MetricsCollector()
        report = collect_estimates(request, 3.0, metrics, RunLogger())
        labels = "[domain=disc,method=series]"
        assert metrics.gauges[f"exit_times.estimate.value{labels}"] == pytest.approx(0.375, rel=1e-10)
        assert metrics.gauges[f"exit_times.estimate.count{labels}"] == report.estimates[0].count

    def test_closed_without_count(self):
        """Test that an estimate without a term count sets only the value gauge."""
        request = RunRequest(subcommand=Subcommand.EXIT_TIME, domain="disc:r0=1", point=Point2(x=0.0, y=0.0),
                             method=RunMethod.CLOSED)
        metrics = MetricsCollector()
        collect_estimates(request, 3.0, metrics, RunLogger())
        labels = "[domain=disc,method=closed]"
        assert metrics.gauges[f"exit_times.estimate.value{labels}"] == pytest.approx(0.5)
        assert f"exit_times.estimate.count{labels}" not in metrics.gauges


class TestExitCodes:
    """Test the mapping of errors to exit statuses."""

    def test_bad_domain(self, runner):
        """Test that an unparseable domain is a usage error."""
        result = invoke(runner, "exit-time", "--domain", "circle:r=1", "--point", "0,0")
        assert result.exit_code == EXIT_USAGE

    def test_bad_point(self, runner):
        """Test that a malformed point is a usage error."""
        result = invoke(runner, "exit-time", "--domain", "disc", "--point", "abc")
        assert result.exit_code == EXIT_USAGE

    def test_missing_point(self, runner):
        """Test that exit-time needs a point."""
        result = invoke(runner, "exit-time", "--domain", "disc")
        assert result.exit_code == EXIT_USAGE

    def test_bad_log_level(self, runner):
        """Test that unknown log levels are rejected."""
        result = runner.invoke(cli, ["--log-level", "LOUD", "verify", "--check", "disc-green"])
        assert result.exit_code == EXIT_USAGE

    def test_invalid_environment(self, runner, monkeypatch):
        """Test that out-of-range environment settings are usage errors for every command."""
        monkeypatch.setenv("EXIT_TIMES_PATHS", "10")
        result = invoke(runner, "verify", "--check", "disc-green")
        assert result.exit_code == EXIT_USAGE

    def test_invalid_numerics_environment(self, runner, monkeypatch):
        """Test that a series tolerance outside (0, 1) is rejected."""
        monkeypatch.setenv("EXIT_TIMES_SERIES_TOL", "2")
        result = invoke(runner, "exit-time", *DISC_POINT, "--method", "closed")
        assert result.exit_code == EXIT_USAGE

    def test_too_few_paths(self, runner):
        """Test that a --paths value below the minimum is a usage error."""
        result = invoke(runner, "exit-time", *DISC_POINT, "--method", "mc", "--paths", "10")
        assert result.exit_code == EXIT_USAGE

    def test_exterior_point(self, runner):
        """Test that a point outside the domain fails the precondition."""
        result = invoke(runner, "exit-time", "--domain", "disc:r0=1", "--point", "2,0", "--method", "closed")
        assert result.exit_code == EXIT_PRECONDITION

    def test_uncovered_single_method(self, runner):
        """Test that a method without a route fails when requested alone."""
        result = invoke(runner, "exit-time", "--domain", "lens", "--point", "0,0", "--method", "green")
        assert result.exit_code == EXIT_PRECONDITION

    def test_invalid_request(self, runner):
        """Test that out-of-range options fail validation."""
        result = invoke(runner, "exit-time", *DISC_POINT, "--method", "closed", "--terms", "5")
        assert result.exit_code == EXIT_USAGE


if __name__ == "__main__":
    pytest.main([__file__])
