"""Acceptance gate: every verified law, at the default desk scale, exactly.

Each test covers one acceptance criterion, runs the mapped law suites at
25 trials per law with zero tolerance (exact rational equality) on both
default groupoid configurations, and prints a PASS line.  Suite reports
are cached so the whole gate stays fast.
"""

import json
import time
from functools import lru_cache

from microlie.cli import main
from microlie.harness import SuiteConfig, parse_groupoid_spec, run_suite

PAIR = "pair:dim=2:deg=2"
GAUGE = "gauge:base=2:k=2"
SPECS = (PAIR, GAUGE)
TRIALS = 25

_timings: dict[tuple[str, str], float] = {}


@lru_cache(maxsize=None)
def report(suite: str, spec: str):
    groupoid, degree = parse_groupoid_spec(spec)
    config = SuiteConfig(suite=suite, groupoid=groupoid, degree=degree, trials=TRIALS, seed=0)
    start = time.monotonic()
    result = run_suite(config)
    _timings[(suite, spec)] = time.monotonic() - start
    return result


def _require(suite: str, laws: tuple[str, ...] = ()) -> None:
    for spec in SPECS:
        r = report(suite, spec)
        by_name = {c.law: c for c in r.cases}
        wanted = laws or tuple(by_name)
        for law in wanted:
            case = by_name[law]
            assert case.status == "pass", f"{law} on {spec}: {case.counterexample}"
        assert _timings[(suite, spec)] < 60, f"suite {suite} on {spec} exceeded 60 s"


def _announce(number: int, title: str) -> None:
    print(f"ACCEPTANCE {number:02d} {title}: PASS")


def test_criterion_01_flow_law():
    _require("flows", ("flow-zero", "flow-additivity"))
    _announce(1, "flow law over the commuting square")


def test_criterion_02_inverse_laws():
    _require("flows", ("flow-inverse", "bisection-inverse"))
    _announce(2, "inverse laws for flows and bisections")


def test_criterion_03_addition_and_commutation():
    _require("module", ("addition-flow", "infinitesimal-commutation", "scaling-flow"))
    _announce(3, "addition and commutation laws")


def test_criterion_04_bracket_laws_with_timing():
    _require("bracket")
    for spec in SPECS:
        assert _timings[("bracket", spec)] <= 10, f"bracket suite on {spec} exceeded 10 s"
    _announce(4, "Lie algebra laws incl. Jacobi within 10 s")


def test_criterion_05_first_jacobi_route():
    _require(
        "liederiv",
        (
            "lie-derivative-equals-bracket",
            "leibniz-rule",
            "pushforward-bracket",
            "derived-jacobi",
        ),
    )
    _announce(5, "Lie derivative route to Jacobi")


def test_criterion_06_strong_difference_calculus():
    _require("strongdiff", ("cocycle-identity", "general-jacobi-random"))
    _require("jacobi2", ("six-cube-jacobi",))
    _announce(6, "strong differences: cocycle and general Jacobi")


def test_criterion_07_second_jacobi_route():
    _require(
        "jacobi2",
        ("bracket-strong-difference", "six-cube-identities", "lambda-witness", "sigma-convention"),
    )
    _announce(7, "strong-difference route to the bracket and Jacobi")


def test_criterion_08_degeneration_oracles():
    _require("oracle")
    _announce(8, "classical degeneration oracles")


def test_criterion_09_engine_laws():
    _require("module", ("ring-laws", "substitution-homomorphism", "restriction-composition"))
    _require("strongdiff", ("relative-difference-equivalence", "axis-recovery"))
    _announce(9, "algebra engine and relativized-difference equivalence")


def test_criterion_10_cli_contract(capsys):
    for spec in SPECS:
        code = main(["verify", "--suite", "all", "--groupoid", spec, "--trials", str(TRIALS)])
        capsys.readouterr()
        assert code == 0, f"verify --suite all failed on {spec}"
    code = main(
        [
            "verify",
            "--suite",
            "bracket",
            "--groupoid",
            PAIR,
            "--mutate",
            "flip-bracket-sign",
            "--format",
            "json",
        ]
    )
    data = json.loads(capsys.readouterr().out)
    assert code == 1 and data["ok"] is False
    assert any("counterexample" in case for case in data["cases"])
    _announce(10, "CLI exit codes and mutation smoke test")
