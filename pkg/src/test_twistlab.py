"""
Tests for the run configuration, suite selection and the command line.
"""

import json

import pytest
from pydantic import ValidationError

from config import SuiteConfig
from exprcas import TwistlabError, parse
from suites import BASE_SUITES, SUITES, UnknownSuiteError, resolve_suites, run_suite
from twistlab import EXIT_OK, EXIT_USAGE, main, star_calc


@pytest.fixture(autouse=True)
def clean_env(monkeypatch, tmp_path):
    for var in ("TWISTLAB_REPORT_DIR", "TWISTLAB_ORDER", "TWISTLAB_SEED", "TWISTLAB_SAMPLES"):
        monkeypatch.delenv(var, raising=False)
    monkeypatch.chdir(tmp_path)


class TestConfig:
    def test_defaults(self):
        config = SuiteConfig.from_env()
        assert config.order == 3
        assert config.suite == "all"

    def test_environment_defaults(self, monkeypatch):
        monkeypatch.setenv("TWISTLAB_ORDER", "2")
        monkeypatch.setenv("TWISTLAB_SEED", "11")
        config = SuiteConfig.from_env()
        assert (config.order, config.seed) == (2, 11)

    def test_explicit_values_win(self, monkeypatch):
        monkeypatch.setenv("TWISTLAB_ORDER", "2")
        assert SuiteConfig.from_env(order=1).order == 1

    @pytest.mark.parametrize("order", [-1, 5])
    def test_order_bounds(self, order):
        with pytest.raises(ValidationError):
            SuiteConfig(order=order)

    def test_report_path(self):
        config = SuiteConfig(suite="udf", seed=5, report_dir="out")
        assert config.report_path().endswith("twistlab_udf_seed5.json")
        assert SuiteConfig(report="x.json").report_path() == "x.json"


class TestSuiteSelection:
    def test_all(self):
        assert resolve_suites("all") == BASE_SUITES
        assert "appendix-a" not in BASE_SUITES

    def test_comma_list(self):
        assert resolve_suites("udf, poisson") == ["udf", "poisson"]

    def test_empty_selection(self):
        assert resolve_suites("") == []

    def test_unknown(self):
        with pytest.raises(UnknownSuiteError):
            resolve_suites("udf,nope")

    def test_registry(self):
        assert set(BASE_SUITES) == {
            "lie-bialgebra", "double-group", "poisson", "dressing-generators", "twist-axioms",
            "udf", "duality", "classical-momentum", "quantum-momentum",
        }
        assert "appendix-a" in SUITES

    def test_run_report(self):
        run = run_suite(SuiteConfig(suite="lie-bialgebra,poisson"))
        assert run.passed
        doc = run.to_dict()
        assert [s["name"] for s in doc["suites"]] == ["lie-bialgebra", "poisson"]
        assert "report" not in doc["config"]
        assert "wedge" in doc["conventions"]


class TestCommandLine:
    def test_verify_writes_deterministic_report(self, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        args = ["verify", "--suite", "lie-bialgebra,poisson", "--order", "1", "--seed", "9"]
        assert main(args + ["--report", str(first)]) == EXIT_OK
        assert main(args + ["--report", str(second)]) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()
        doc = json.loads(first.read_text(encoding="utf-8"))
        assert doc["passed"] is True
        assert doc["config"]["seed"] == 9

    def test_default_report_location(self, tmp_path):
        assert main(["verify", "--suite", "poisson"]) == EXIT_OK
        assert (tmp_path / "data" / "results" / "twistlab_poisson_seed20240101.json").exists()

    def test_unknown_suite_is_usage_error(self):
        assert main(["verify", "--suite", "nope"]) == EXIT_USAGE

    def test_order_out_of_range(self):
        assert main(["verify", "--suite", "poisson", "--order", "9"]) == EXIT_USAGE

    def test_missing_command(self):
        assert main([]) == EXIT_USAGE

    def test_star(self, capsys):
        assert main(["star", "--space", "gstar", "--f", "x", "--g", "y", "--order", "1"]) == EXIT_OK
        assert "hbar" in capsys.readouterr().out

    def test_star_parse_error(self, capsys):
        assert main(["star", "--f", "sin(x)", "--g", "y", "--order", "1"]) == EXIT_USAGE
        assert "unsupported function sin" in capsys.readouterr().out

    def test_star_unbalanced_input(self, capsys):
        assert main(["star", "--f", "(x + 1", "--g", "y", "--order", "1"]) == EXIT_USAGE
        assert "cannot parse" in capsys.readouterr().out

    def test_fixtures_list(self, capsys):
        assert main(["fixtures", "list"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "jordanian (twist)" in out
        assert "axb (algebra)" in out


class TestStarCalc:
    def test_gstar_commutator(self):
        xy = star_calc("gstar", "x", "y", 1)
        yx = star_calc("gstar", "y", "x", 1)
        assert xy[1] - yx[1] == parse("y^2")

    def test_group_space_leading_term(self):
        assert star_calc("group", "a", "n", 1)[0] == parse("a*n")

    def test_unknown_space(self):
        with pytest.raises(TwistlabError):
            star_calc("torus", "x", "y", 1)
