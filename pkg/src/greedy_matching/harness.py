"""Seeded ratio-estimation experiments and their CSV/JSON reports.

An experiment draws instances from one generator, runs each requested
algorithm ``trials`` times per instance, and compares the results with the
exact optimum. Every instance, algorithm and trial gets its own random
stream derived from the master seed, so results do not depend on the order
or process in which the work runs.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .bush import bush_decompose, rgma, rgma_expected_weight_exact, validate_bush
from .errors import BoundViolationError, BudgetExceededError, InputError, ParseError
from .exact import max_cardinality_matching, max_weight_matching, solve_exact
from .graph import WeightedGraph, matching_weight
from .greedy import run_greedy
from .mrg import mean_and_stderr, mrg, mrg_expected_cardinality_exact
from .seeding import derive_rng

SCHEMA_VERSION = 1
ALGORITHMS = ("greedy", "rgma", "mrg", "rgma-decomp")
GENERATORS = ("bush", "small-bush", "two-weight-sweep", "random-graph", "reduction", "graph")
MAX_INSTANCES = 10_000
MAX_TRIALS = 10_000_000


# -- configuration ---------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int
    generator: str = "bush"
    algorithms: tuple = ("rgma",)
    trials: int = 100
    instances: int = 10
    bushes: int = 4
    max_bush_size: int = 3
    weights: str = "distinct"
    n: int = 8
    p: float = 0.3
    cnf: Optional[str] = None
    variant: str = "main"
    x: int = 2
    graph: Optional[str] = None
    exact: bool = True
    budget: int = 1_000_000
    sweep_max_size: int = 5

    def __post_init__(self):
        if self.generator not in GENERATORS:
            raise InputError(f"unknown generator {self.generator!r} (choose from {', '.join(GENERATORS)})")
        bad = [a for a in self.algorithms if a not in ALGORITHMS]
        if bad or not self.algorithms:
            raise InputError(f"unknown algorithms {bad} (choose from {', '.join(ALGORITHMS)})")
        if not 0 <= self.trials <= MAX_TRIALS or not 1 <= self.instances <= MAX_INSTANCES:
            raise InputError("trials or instances outside desk-scale limits")
        if self.generator == "reduction" and not self.cnf:
            raise InputError("generator=reduction needs cnf=<file>")
        if self.generator == "graph" and not self.graph:
            raise InputError("generator=graph needs graph=<file>")


def _coerce(name: str, raw: str, lineno: int):
    types = {f.name: f.type for f in fields(ExperimentConfig)}
    kind = types[name]
    try:
        if name == "algorithms":
            return tuple(a.strip() for a in raw.split(",") if a.strip())
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        if kind == "bool":
            if raw.lower() not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(raw)
            return raw.lower() in ("true", "1", "yes")
        return raw
    except ValueError:
        raise ParseError(f"bad value {raw!r} for {name}", lineno) from None


def parse_config(text: str) -> ExperimentConfig:
    """Read ``key = value`` lines (``#`` comments, optional quotes around strings)."""
    known = {f.name for f in fields(ExperimentConfig)}
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line or (line.startswith("[") and line.endswith("]")):
            continue
        if "=" not in line:
            raise ParseError("expected key = value", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if len(value) >= 2 and value[0] == value[-1] and value[0] in "\"'":
            value = value[1:-1]
        if key not in known:
            raise ParseError(f"unknown key {key!r}", lineno)
        values[key] = _coerce(key, value, lineno)
    if "seed" not in values:
        raise ParseError("missing mandatory key 'seed'")
    return ExperimentConfig(**values)


def read_config(path) -> ExperimentConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)


# -- instances -------------------------------------------------------------------


def _generate_instances(cfg: ExperimentConfig) -> list:
    from . import generators as gen

    if cfg.generator == "two-weight-sweep":
        pairs = ((2, 1), (3, 2), (101, 100))
        return [
            (f"two-weight#{i}", g)
            for i, g in enumerate(gen.two_weight_bush_graphs(cfg.sweep_max_size, pairs))
        ]
    if cfg.generator == "graph":
        from .io import read_graph

        return [(Path(cfg.graph).name, read_graph(cfg.graph))]
    if cfg.generator == "reduction":
        from .cnf import read_dimacs
        from .reductions import build_reduction

        f = read_dimacs(cfg.cnf, 3 if cfg.variant == "greedy-edge" else 2)
        return [(f"{cfg.variant}:{Path(cfg.cnf).name}", build_reduction(f, cfg.variant, cfg.x).graph)]
    out = []
    for i in range(cfg.instances):
        rng = derive_rng(cfg.seed, "instance", i)
        if cfg.generator == "bush":
            if cfg.weights == "two":
                g = gen.random_bush_graph(rng, 2, cfg.max_bush_size, (2, 1))
            else:
                g = gen.random_bush_graph(rng, cfg.bushes, cfg.max_bush_size)
        elif cfg.generator == "small-bush":
            g = gen.random_small_bush_graph(rng, cfg.bushes)
        else:
            g = gen.random_graph(rng, cfg.n, cfg.p)
        out.append((f"{cfg.generator}#{i}", g))
    return out


# -- estimates -------------------------------------------------------------------


@dataclass(frozen=True)
class RatioEstimate:
    """Per (instance, algorithm) statistics; ratios are against the exact optimum.

    ``optimum`` is the best greedy weight for weighted algorithms and the
    maximum cardinality for ``mrg`` and ``rgma-decomp``. ``adjusted_mean_ratio``
    (``rgma-decomp`` only) divides by ``optimum - 1/|V|`` instead.
    """

    algorithm: str
    instance: str
    index: int
    trials: int
    status: str = "ok"
    optimum: Optional[Fraction] = None
    mean_ratio: Optional[Fraction] = None
    standard_error: Optional[float] = None
    min_ratio: Optional[Fraction] = None
    exact_expectation: Optional[Fraction] = None
    exact_ratio: Optional[Fraction] = None
    adjusted_mean_ratio: Optional[Fraction] = None
    within_3se: Optional[bool] = None


COLUMNS = tuple(f.name for f in fields(RatioEstimate))
_RATIONAL = {"optimum", "mean_ratio", "min_ratio", "exact_expectation", "exact_ratio", "adjusted_mean_ratio"}


def _run_trials(g: WeightedGraph, algorithm: str, trials: int, seed: int, index: int):
    """Numerator values of each trial, with the universal half bounds checked."""
    values = []
    if algorithm in ("greedy", "rgma"):
        best = matching_weight(g, max_weight_matching(g))
        bg = validate_bush(g) if algorithm == "rgma" else None
        for t in range(trials):
            rng = derive_rng(seed, index, algorithm, t)
            m = rgma(bg, rng) if bg else run_greedy(g, "random", rng).matching
            w = matching_weight(g, m)
            if 2 * w < best:
                raise BoundViolationError(f"{algorithm} trial {t} on instance {index}: 2*{w} < {best}")
            values.append(w)
    else:
        u = g.unweighted()
        nu = len(max_cardinality_matching(u))
        for t in range(trials):
            rng = derive_rng(seed, index, algorithm, t)
            if algorithm == "mrg":
                m = mrg(u, rng)
            else:
                m = rgma(bush_decompose(u, "random", rng).bush_graph, rng)
            if 2 * len(m) < nu:
                raise BoundViolationError(f"{algorithm} trial {t} on instance {index}: 2*{len(m)} < {nu}")
            values.append(len(m))
    return values


def evaluate(name: str, index: int, g: WeightedGraph, algorithm: str, trials: int, seed: int,
             exact: bool = True, budget: Optional[int] = 1_000_000) -> RatioEstimate:
    weighted = algorithm in ("greedy", "rgma")
    try:
        if weighted:
            optimum = solve_exact(g, budget).opt_weight
        else:
            optimum = Fraction(len(max_cardinality_matching(g.unweighted())))
    except BudgetExceededError as exc:
        return RatioEstimate(algorithm, name, index, trials, status=f"skipped: budget exceeded ({exc})")
    if optimum == 0:
        return RatioEstimate(algorithm, name, index, trials, status="skipped: no edges", optimum=optimum)
    values = _run_trials(g, algorithm, trials, seed, index)
    if weighted and any(v > optimum for v in values):
        raise BoundViolationError(f"{algorithm} on instance {index} beat the greedy optimum")
    ratios = [Fraction(v) / optimum for v in values]
    mean, se = mean_and_stderr(ratios)
    expectation = None
    if exact:
        try:
            if algorithm == "rgma":
                expectation = rgma_expected_weight_exact(g, budget)
            elif algorithm == "mrg":
                expectation = mrg_expected_cardinality_exact(g.unweighted(), budget)
        except BudgetExceededError:
            expectation = None
    exact_ratio = expectation / optimum if expectation is not None else None
    adjusted = None
    if algorithm == "rgma-decomp" and mean is not None:
        adjusted = mean * optimum / (optimum - Fraction(1, g.n_vertices))
    agree = None
    if exact_ratio is not None and mean is not None and trials >= 10_000:
        agree = abs(float(mean - exact_ratio)) <= 3 * se if se else mean == exact_ratio
    return RatioEstimate(
        algorithm, name, index, trials,
        optimum=optimum,
        mean_ratio=mean,
        standard_error=se,
        min_ratio=min(ratios) if ratios else None,
        exact_expectation=expectation,
        exact_ratio=exact_ratio,
        adjusted_mean_ratio=adjusted,
        within_3se=agree,
    )


def _evaluate_task(args):
    return evaluate(*args)


def worker_count(default: int = 1) -> int:
    """Worker cap from ``GREEDY_THREADS`` (unset or invalid means ``default``)."""
    raw = os.environ.get("GREEDY_THREADS")
    try:
        return max(1, int(raw)) if raw else default
    except ValueError:
        return default


def estimate_ratio(cfg: ExperimentConfig, workers: Optional[int] = None) -> list:
    """Run the experiment; output is ordered by instance index, then algorithm order."""
    instances = _generate_instances(cfg)
    tasks = [
        (name, i, g, alg, cfg.trials, cfg.seed, cfg.exact, cfg.budget)
        for i, (name, g) in enumerate(instances)
        for alg in cfg.algorithms
    ]
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_evaluate_task, tasks))
    return [_evaluate_task(t) for t in tasks]


# -- reports ---------------------------------------------------------------------


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    p, _, q = text.partition("/")
    return Fraction(int(p), int(q or 1))


def _encode(est: RatioEstimate) -> dict:
    row = asdict(est)
    for key in _RATIONAL:
        if row[key] is not None:
            row[key] = format_rational(row[key])
    return row


def _decode(row: dict) -> RatioEstimate:
    row = dict(row)
    for key in _RATIONAL:
        if row.get(key) not in (None, ""):
            row[key] = parse_rational(row[key])
        else:
            row[key] = None
    return RatioEstimate(**row)


def report(estimates, fmt: str = "csv") -> str:
    """Serialize estimates; identical inputs give identical bytes."""
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "estimates": [_encode(e) for e in estimates]}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if fmt != "csv":
        raise InputError(f"unknown report format {fmt!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for est in estimates:
        row = _encode(est)
        writer.writerow("" if row[c] is None else (repr(row[c]) if isinstance(row[c], float) else row[c])
                        for c in COLUMNS)
    return buf.getvalue()


def parse_json_report(text: str) -> list:
    doc = json.loads(text)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise InputError(f"unsupported report schema {doc.get('schema_version')!r}")
    return [_decode(row) for row in doc["estimates"]]


def write_report(estimates, path, fmt: Optional[str] = None) -> Path:
    path = Path(path)
    fmt = fmt or ("json" if path.suffix == ".json" else "csv")
    try:
        path.write_text(report(estimates, fmt))
    except OSError as exc:
        raise InputError(f"cannot write report {path}: {exc}") from exc
    return path


__all__ = [
    "ExperimentConfig",
    "RatioEstimate",
    "parse_config",
    "read_config",
    "estimate_ratio",
    "evaluate",
    "report",
    "write_report",
    "parse_json_report",
    "format_rational",
    "parse_rational",
    "worker_count",
]
