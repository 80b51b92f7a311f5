from fractions import Fraction

import pytest

from greedy_matching import (
    BoundViolationError,
    ExperimentConfig,
    InputError,
    ParseError,
    RatioEstimate,
    WeightedGraph,
    estimate_ratio,
    parse_config,
    report,
)
from greedy_matching.generators import star_graph
from greedy_matching.harness import COLUMNS, evaluate, parse_json_report, worker_count, write_report
import greedy_matching.harness as harness

from helpers import path


def test_parse_config():
    cfg = parse_config('[experiment]\nseed = 7  # master\ngenerator = "small-bush"\nalgorithms = rgma, greedy\ntrials=5\nexact = no\n')
    assert cfg == ExperimentConfig(seed=7, generator="small-bush", algorithms=("rgma", "greedy"), trials=5, exact=False)


@pytest.mark.parametrize(
    "text, line",
    [("seed = 1\nbogus = 2\n", 2), ("seed = x\n", 1), ("seed = 1\njust words\n", 2), ("seed=1\nexact = maybe\n", 2)],
)
def test_config_errors_name_the_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_config(text)
    assert info.value.line == line


def test_config_validation():
    with pytest.raises(ParseError):
        parse_config("trials = 3\n")
    with pytest.raises(InputError):
        ExperimentConfig(seed=1, generator="nope")
    with pytest.raises(InputError):
        ExperimentConfig(seed=1, algorithms=("magic",))
    with pytest.raises(InputError):
        ExperimentConfig(seed=1, generator="reduction")


def test_empty_report_is_header_only():
    assert report([], "csv") == ",".join(COLUMNS) + "\n"


def test_single_row_matches_values():
    est = RatioEstimate("rgma", "demo", 0, 10, optimum=Fraction(8, 3), mean_ratio=Fraction(3, 4),
                        standard_error=0.125, min_ratio=Fraction(1, 2))
    header, row = report([est], "csv").splitlines()
    values = dict(zip(header.split(","), row.split(",")))
    assert values["optimum"] == "8/3" and values["mean_ratio"] == "3/4" and values["min_ratio"] == "1/2"
    assert values["standard_error"] == "0.125" and values["exact_ratio"] == ""
    assert values["trials"] == "10" and values["status"] == "ok"


def test_json_round_trip(tmp_path):
    cfg = ExperimentConfig(seed=3, generator="bush", algorithms=("rgma", "greedy", "mrg", "rgma-decomp"),
                           trials=20, instances=3)
    ests = estimate_ratio(cfg, workers=1)
    assert parse_json_report(report(ests, "json")) == ests
    out = write_report(ests, tmp_path / "r.json")
    assert parse_json_report(out.read_text()) == ests
    with pytest.raises(InputError):
        parse_json_report('{"schema_version": 99, "estimates": []}')


def test_deterministic_and_parallel_equal():
    cfg = ExperimentConfig(seed=11, generator="small-bush", algorithms=("rgma", "mrg"), trials=30, instances=4)
    a = report(estimate_ratio(cfg, workers=1), "json")
    assert a == report(estimate_ratio(cfg, workers=1), "json")
    assert a == report(estimate_ratio(cfg, workers=2), "json")
    assert a != report(estimate_ratio(ExperimentConfig(**{**cfg.__dict__, "seed": 12}), workers=1), "json")


def test_single_bush_ratio_is_one():
    est = evaluate("star", 0, star_graph(4, 3), "rgma", 50, seed=1)
    assert est.mean_ratio == 1 and est.exact_ratio == 1 and est.min_ratio == 1


def test_ratios_bounded_and_exact_within_three_se():
    g = WeightedGraph(5, {(0, 1): 2, (0, 2): 2, (0, 3): 2, (3, 4): 1})
    est = evaluate("fixture", 0, g, "rgma", 10_000, seed=4)
    assert est.exact_expectation == Fraction(8, 3)
    assert Fraction(1, 2) <= est.min_ratio and est.mean_ratio <= 1
    assert est.within_3se


def test_budget_overflow_is_recorded_not_raised():
    est = evaluate("gadget", 0, path(1, 3, 4, 4, 4, 4, 4, 3, 1), "greedy", 5, seed=1, budget=1)
    assert est.status.startswith("skipped") and est.mean_ratio is None


def test_edgeless_instance_is_skipped():
    assert evaluate("empty", 0, WeightedGraph(3), "mrg", 5, seed=1).status.startswith("skipped")


def test_bound_violation_fails_loudly(monkeypatch):
    monkeypatch.setattr(harness, "rgma", lambda bg, rng: frozenset())
    with pytest.raises(BoundViolationError):
        evaluate("star", 0, star_graph(3), "rgma", 3, seed=0)


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("GREEDY_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("GREEDY_THREADS", "junk")
    assert worker_count(2) == 2
    monkeypatch.delenv("GREEDY_THREADS")
    assert worker_count() == 1


def test_two_weight_sweep_stays_above_two_thirds():
    cfg = ExperimentConfig(seed=1, generator="two-weight-sweep", algorithms=("rgma",), trials=0, sweep_max_size=3)
    ests = estimate_ratio(cfg, workers=1)
    assert ests and all(e.exact_ratio >= Fraction(2, 3) for e in ests)
