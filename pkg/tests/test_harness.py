import json

import pytest

from microlie.cli import main
from microlie.harness import (
    ConfigError,
    SuiteConfig,
    generate,
    parse_groupoid_spec,
    run_suite,
)
from microlie.groupoids import PairGroupoid, TrivialGaugeGroupoid


def config(spec="pair:dim=2:deg=2", suite="flows", trials=5, seed=0):
    groupoid, degree = parse_groupoid_spec(spec)
    return SuiteConfig(suite=suite, groupoid=groupoid, degree=degree, trials=trials, seed=seed)


class TestConfig:
    def test_parse_specs(self):
        g, deg = parse_groupoid_spec("pair:dim=3:deg=1")
        assert g == PairGroupoid(3) and deg == 1
        g, _ = parse_groupoid_spec("gauge:base=4:k=3")
        assert g == TrivialGaugeGroupoid(4, 3)

    def test_bad_specs(self):
        for text in ("ring:dim=2", "pair:dim=x", "pair:foo=2", "gauge:base=2:k=2:z=1"):
            with pytest.raises(ConfigError):
                parse_groupoid_spec(text)

    def test_bounds(self):
        with pytest.raises(ConfigError):
            config("pair:dim=5:deg=2")
        with pytest.raises(ConfigError):
            config("pair:dim=2:deg=9")
        with pytest.raises(ConfigError):
            config("gauge:base=9:k=2")
        with pytest.raises(ConfigError):
            SuiteConfig(suite="nope", groupoid=PairGroupoid(2))


class TestGenerate:
    def test_deterministic(self):
        cfg = config(suite="bracket", trials=10)
        for trial in range(6):
            assert generate(cfg, trial) == generate(cfg, trial)

    def test_seed_changes_data(self):
        a = generate(config(seed=0, suite="bracket"), 4)
        b = generate(config(seed=1, suite="bracket"), 4)
        assert a != b

    def test_degenerate_strata(self):
        x, y, z = generate(config(suite="bracket"), 0)
        assert x == y == z  # all-zero stratum
        x1, y1, z1 = generate(config(suite="bracket"), 1)
        assert x1 == y1 == z1  # repeated-section stratum


class TestRunSuite:
    def test_flows_clean(self):
        report = run_suite(config(suite="flows"))
        assert report.ok
        assert {c.status for c in report.cases} == {"pass"}

    def test_zero_trials_vacuous(self):
        report = run_suite(config(trials=0))
        assert report.ok and report.cases == []

    def test_report_records_seed_and_spec(self):
        report = run_suite(config(spec="gauge:base=2:k=2", seed=7, trials=2))
        assert report.seed == 7
        assert report.groupoid == "gauge:base=2:k=2"

    def test_mutation_fails_bracket_suite(self):
        report = run_suite(config(suite="bracket", trials=5), mutation="flip-bracket-sign")
        assert not report.ok
        failing = [c for c in report.cases if c.status == "fail"]
        assert failing and all(c.counterexample for c in failing)

    def test_unknown_mutation(self):
        with pytest.raises(ConfigError):
            run_suite(config(), mutation="scramble")

    def test_report_schema(self):
        report = run_suite(config(suite="oracle", trials=3))
        data = report.to_dict()
        assert set(data) == {"suite", "groupoid", "seed", "trials", "cases", "ok"}
        for case in data["cases"]:
            assert {"law", "anchor", "status"} <= set(case)
            assert case["status"] in ("pass", "fail")
        json.dumps(data)  # serializable

    def test_every_law_carries_an_anchor(self):
        report = run_suite(config(suite="all", trials=1))
        assert report.cases
        assert all(case.anchor for case in report.cases)


class TestCli:
    def test_verify_exit_zero(self, capsys):
        assert main(["verify", "--suite", "flows", "--trials", "3"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out and "ok" in out

    def test_verify_json(self, capsys):
        code = main(["verify", "--suite", "oracle", "--trials", "2", "--format", "json"])
        assert code == 0
        data = json.loads(capsys.readouterr().out)
        assert data["ok"] is True

    def test_mutation_exit_one_with_counterexample(self, capsys):
        code = main(
            [
                "verify",
                "--suite",
                "bracket",
                "--trials",
                "3",
                "--mutate",
                "flip-bracket-sign",
                "--format",
                "json",
            ]
        )
        assert code == 1
        data = json.loads(capsys.readouterr().out)
        assert data["ok"] is False
        assert any("counterexample" in case for case in data["cases"])

    def test_usage_errors_exit_two(self, capsys):
        assert main(["verify", "--suite", "nosuch"]) == 2
        assert main(["verify", "--groupoid", "pair:dim=9"]) == 2
        assert main(["bracket", "--groupoid", "gauge:base=2:k=2", "--x", "x0", "--y", "x0"]) == 2

    def test_bracket_command(self, capsys):
        code = main(["bracket", "--groupoid", "pair:dim=2", "--x", "1; 0", "--y", "0; x0"])
        assert code == 0
        assert capsys.readouterr().out.strip() == "0; 1"

    def test_bracket_parse_error(self, capsys):
        code = main(["bracket", "--groupoid", "pair:dim=1", "--x", "x0 +", "--y", "x0"])
        assert code == 2
        assert "position" in capsys.readouterr().err
