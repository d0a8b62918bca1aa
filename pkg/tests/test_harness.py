"""
Unit tests for the verification suites, reports and single evaluations.
"""

import csv
import json
import math
import os

import pytest

from invbinom import __version__
from invbinom import harness
from invbinom.closedform import IdentityId, closed_eval
from invbinom.exceptions import ConfigurationError, ParseError
from invbinom.harness import (
    CSV_COLUMNS,
    Check,
    Report,
    Suite,
    SuiteConfig,
    build_checks,
    eval_cmd,
    evaluate_check,
    load_grid,
    parse_key_values,
    run_suite,
    suite_names,
    write_report,
)
from invbinom.numkit import Method


@pytest.fixture
def thm12_report(clean_env):
    """Run the thm12 suite once on two workers."""
    return run_suite(SuiteConfig(suite="thm12", workers=2))


# ==========================================================================
# Configuration
# ==========================================================================


class TestSuiteConfig:
    """Test configuration validation."""

    def test_suite_names(self):
        """Test that the catalogue exposes every suite."""
        names = suite_names()
        for name in ("thm11", "thm12", "thm15", "integral-reps", "boundary", "shuffle", "roundtrip"):
            assert name in names
        assert SuiteConfig().suite_list() == names
        assert SuiteConfig(suite="thm14").suite_list() == ["thm14"]

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"suite": "thm99"},
            {"fmt": "xml"},
            {"tol": 0.0},
            {"max_terms": -5},
            {"workers": 0},
            {"tol_overrides": {"THM12": -1.0}},
            {"suite": "thm12", "grid": [0.5, 0.95]},
        ],
    )
    def test_invalid(self, kwargs):
        """Test that bad settings raise ConfigurationError."""
        with pytest.raises(ConfigurationError):
            SuiteConfig(**kwargs).validate()

    def test_valid_grid(self):
        """Test that an in-domain grid is accepted."""
        SuiteConfig(suite="thm12", grid=[-1.0, 0.5]).validate()


class TestBuildChecks:
    """Test how suites expand into checks."""

    def test_grid_override(self):
        """Test that a grid replaces the identity's default points."""
        checks = build_checks(SuiteConfig(suite="thm12", grid=[-1.0, 0.5]))
        assert [c.param for c in checks] == [-1 + 0j, 0.5 + 0j]

    def test_tolerances(self):
        """Test global and per-identity tolerance overrides."""
        checks = build_checks(SuiteConfig(suite="thm13a", tol=1e-6, tol_overrides={"EQ_4K_KP1": 1e-9}))
        tols = {c.identity: c.tol for c in checks}
        assert tols == {"THM13A": 1e-6, "EQ_4K_KP1": 1e-9}

    def test_seeded_points_are_reproducible(self):
        """Test that the same seed gives the same random checks."""
        first = [c.param for c in build_checks(SuiteConfig(suite="shuffle", seed=3))]
        second = [c.param for c in build_checks(SuiteConfig(suite="shuffle", seed=3))]
        other = [c.param for c in build_checks(SuiteConfig(suite="shuffle", seed=4))]
        assert len(first) == 50
        assert first == second
        assert first != other

    def test_extras_included(self):
        """Test that suites carry their property checks."""
        identities = {c.identity for c in build_checks(SuiteConfig(suite="thm13b"))}
        assert identities == {"THM13B", "THM13B_MIRROR", "THM14_MIRROR"}

    def test_roundtrip_size(self):
        """Test that the inversion suite covers both grids."""
        checks = build_checks(SuiteConfig(suite="roundtrip"))
        assert len(checks) == 2000


# ==========================================================================
# Running
# ==========================================================================


class TestEvaluateCheck:
    """Test single check evaluation."""

    def test_passing_check(self):
        """Test a passing comparison of plain numbers."""
        record = evaluate_check(Check("DEMO", 0j, lambda: 1.0, lambda: 1.0 + 1e-13, 1e-12))
        assert record.passed
        assert record.abs_diff == pytest.approx(1e-13, rel=1e-3)
        assert record.lhs_method == Method.CLOSED.value
        assert record.error is None

    def test_failing_check(self):
        """Test a comparison beyond tolerance."""
        record = evaluate_check(Check("DEMO", 0j, lambda: 1.0, lambda: 1.1, 1e-12))
        assert not record.passed
        assert record.error is None

    def test_error_recorded(self):
        """Test that library errors become error records."""
        record = evaluate_check(Check("DEMO", 5 + 0j, lambda: closed_eval(IdentityId.THM12, 5.0), lambda: 0.0, 1e-12))
        assert not record.passed
        assert record.lhs is None
        assert record.error.startswith("DOMAIN:")


class TestRunSuite:
    """Test whole-suite runs."""

    def test_thm12_passes(self, thm12_report):
        """Test that every default grid point of the suite passes."""
        summary = thm12_report.summary
        assert summary["total"] == 9
        assert summary["passed"] == 9
        assert summary["errors"] == 0
        assert summary["max_abs_diff"] <= 1e-11
        assert thm12_report.exit_code == 0
        assert thm12_report.tool_version == __version__

    def test_records_sorted(self, thm12_report):
        """Test the stable record order."""
        params = [r.param.real for r in thm12_report.records]
        assert params == sorted(params)
        assert {r.lhs_method for r in thm12_report.records} == {Method.DIRECT.value}

    def test_empty_suite(self, monkeypatch, capture_logs):
        """Test that a suite without checks gives an empty passing report."""
        _, stream = capture_logs
        monkeypatch.setitem(harness.SUITES, "empty", Suite("empty", "Nothing to check"))
        report = run_suite(SuiteConfig(suite="empty"))
        assert report.records == []
        assert report.exit_code == 0
        assert report.summary["max_abs_diff"] == 0.0
        assert "no checks" in stream.getvalue()

    def test_invalid_config(self):
        """Test that run_suite validates first."""
        with pytest.raises(ConfigurationError):
            run_suite(SuiteConfig(suite="nope"))

    def test_budget_restored(self, clean_env):
        """Test that run budgets do not leak into the environment."""
        run_suite(SuiteConfig(suite="derivative", max_terms=500_000, workers=1))
        assert "INVBINOM_MAX_TERMS" not in os.environ

    def test_failures_set_exit_code(self):
        """Test that an error record makes the exit code 1."""
        record = evaluate_check(Check("DEMO", 0j, lambda: math.inf, lambda: 0.0, 1e-12))
        report = Report("demo", "now", __version__, [record])
        assert report.exit_code == 1
        assert report.summary["failed"] + report.summary["errors"] == 1


# ==========================================================================
# Reports
# ==========================================================================


class TestReports:
    """Test report files."""

    def test_json(self, thm12_report, tmp_path):
        """Test the JSON schema."""
        path = tmp_path / "report.json"
        write_report(thm12_report, str(path), "json")
        data = json.loads(path.read_text())
        assert set(data) == {"suite", "timestamp", "tool_version", "records", "summary"}
        assert data["suite"] == "thm12"
        assert data["summary"]["total"] == 9
        record = data["records"][0]
        assert set(record["param"]) == {"re", "im"}
        assert record["identity"] == "THM12"
        assert record["passed"] is True

    def test_csv(self, thm12_report, tmp_path):
        """Test the CSV columns and one row per record."""
        path = tmp_path / "report.csv"
        write_report(thm12_report, str(path), "csv")
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            rows = list(reader)
        assert tuple(reader.fieldnames) == CSV_COLUMNS
        assert len(rows) == 9
        assert float(rows[0]["param_re"]) == pytest.approx(-2.9)
        assert rows[0]["error"] == ""

    def test_unknown_format(self, thm12_report, tmp_path):
        """Test that write_report rejects unknown formats."""
        with pytest.raises(ConfigurationError):
            write_report(thm12_report, str(tmp_path / "report.xml"), "xml")


class TestLoadGrid:
    """Test grid files."""

    def test_mixed_literals(self, tmp_path):
        """Test numbers and complex strings."""
        path = tmp_path / "grid.json"
        path.write_text('[0.5, "-1", "0.3+0.4i"]')
        assert load_grid(str(path)) == [0.5, -1, 0.3 + 0.4j]

    @pytest.mark.parametrize("content", ['{"x": 1}', "[1, ", '["abc"]'])
    def test_malformed(self, tmp_path, content):
        """Test that malformed files raise ConfigurationError."""
        path = tmp_path / "grid.json"
        path.write_text(content)
        with pytest.raises(ConfigurationError):
            load_grid(str(path))

    def test_missing(self, tmp_path):
        """Test a missing file."""
        with pytest.raises(ConfigurationError):
            load_grid(str(tmp_path / "absent.json"))


# ==========================================================================
# Single evaluations
# ==========================================================================


class TestEvalCmd:
    """Test the key=value evaluator."""

    def test_series(self):
        """Test the reference series value."""
        result = eval_cmd("series", {"family": "c3", "r": "1", "z": "1/2", "seq": "one_over_k"})
        assert result.value.real == pytest.approx(0.1710070, abs=1e-7)
        assert result.method is Method.DIRECT

    def test_gpl(self):
        """Test G(0, 0; e) = 1/2."""
        result = eval_cmd("gpl", {"letters": "0,0", "z": repr(math.e)})
        assert result.value == pytest.approx(0.5, abs=1e-15)

    def test_mpl(self):
        """Test Li_2(1/2)."""
        result = eval_cmd("MPL", {"depths": "2", "args": "0.5"})
        assert result.value.real == pytest.approx(math.pi**2 / 12 - math.log(2) ** 2 / 2, abs=1e-12)

    def test_closed(self):
        """Test a closed form by name and parameter."""
        result = eval_cmd("closed", {"id": "thm12", "x": "-2"})
        assert result.value.real == pytest.approx(math.pi**2 / 6 - math.log(3) ** 2 / 2, abs=1e-14)
        assert result.method is Method.CLOSED

    def test_closed_rational_level(self):
        """Test an exact rational level for the tabulated values."""
        result = eval_cmd("closed", {"id": "tbl_s30", "nu": "1/6"})
        assert result.value.real == pytest.approx(math.pi**2 / 6 - math.log(3) ** 2 / 2, abs=1e-14)
        with pytest.raises(ParseError):
            eval_cmd("closed", {"id": "tbl_s30", "nu": "1/0"})

    @pytest.mark.parametrize(
        "kind, args",
        [
            ("integral", {}),
            ("series", {"family": "c3", "z": "1"}),
            ("series", {"family": "c5", "r": "1", "z": "1"}),
            ("series", {"family": "c3", "r": "one", "z": "1"}),
            ("closed", {"id": "thm12", "x": "-1", "z": "2"}),
            ("gpl", {"letters": "0,a", "z": "1"}),
        ],
    )
    def test_parse_errors(self, kind, args):
        """Test that malformed requests raise ParseError."""
        with pytest.raises(ParseError):
            eval_cmd(kind, args)

    def test_parse_key_values(self):
        """Test key=value splitting."""
        assert parse_key_values(["family=C3", "z = 1/2"]) == {"family": "C3", "z": "1/2"}
        with pytest.raises(ParseError):
            parse_key_values(["family"])
