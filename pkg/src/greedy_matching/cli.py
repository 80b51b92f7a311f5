"""Command line entry point ``greedy``.

Exit codes: 0 success, 1 usage error, 2 bad input, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import io as gio
from .errors import BudgetExceededError, GreedyMatchingError, InputError, LimitExceededError

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _q(w) -> str:
    w = Fraction(w)
    return f"{w.numerator}/{w.denominator}"


def _edges_json(m):
    return [list(e) for e in sorted(m)]


def _emit(args, payload: dict, text: str):
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _graph(path):
    try:
        return gio.read_graph(path)
    except OSError as exc:
        raise InputError(f"cannot read graph {path}: {exc}") from exc


def _read(path, reader, what):
    try:
        return reader(path)
    except OSError as exc:
        raise InputError(f"cannot read {what} {path}: {exc}") from exc


def _write_text(path, text):
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from exc


# -- handlers --------------------------------------------------------------------


def cmd_run(args):
    from .greedy import PriorityTieBreak, run_greedy
    from .graph import matching_weight

    g = _graph(args.graph)
    tb = args.tie_break
    if tb.startswith("priority:"):
        order = _read(tb.split(":", 1)[1], lambda p: gio.parse_edge_list(Path(p).read_text()), "priority file")
        tb = PriorityTieBreak(order)
    elif tb not in ("random", "lex"):
        raise InputError(f"unknown tie-break {tb!r} (random, lex or priority:FILE)")
    run = run_greedy(g, tb, args.seed)
    w = matching_weight(g, run.matching)
    payload = {"matching": _edges_json(run.matching), "weight": _q(w),
               "trace": [[*s.edge, s.class_index, s.n_candidates] for s in run.trace]}
    _emit(args, payload, gio.format_matching(run.matching) + f"# weight {gio.format_weight(w)}")


def cmd_verify(args):
    from .graph import check_matching, is_maximal_matching, matching_weight
    from .greedy import is_greedy

    g = _graph(args.graph)
    m = check_matching(g, _read(args.matching, gio.read_matching, "matching"))
    ok = is_greedy(g, m)
    payload = {"greedy": ok, "maximal": is_maximal_matching(g, m), "weight": _q(matching_weight(g, m))}
    _emit(args, payload, "greedy" if ok else "not greedy")


def cmd_enumerate(args):
    from .graph import matching_weight
    from .greedy import enumerate_greedy_matchings

    g = _graph(args.graph)
    ms = sorted(enumerate_greedy_matchings(g, args.limit), key=sorted)
    payload = {"count": len(ms), "matchings": [{"edges": _edges_json(m), "weight": _q(matching_weight(g, m))} for m in ms]}
    lines = [f"{len(ms)} greedy matchings"]
    lines += [" ".join(f"{u}-{v}" for u, v in sorted(m)) + f"  weight {gio.format_weight(matching_weight(g, m))}" for m in ms]
    _emit(args, payload, "\n".join(lines))


def cmd_solve(args):
    from .exact import solve_exact

    g = _graph(args.graph)
    r = solve_exact(g, args.budget, count=args.count)
    payload = {"opt_weight": _q(r.opt_weight), "witness": _edges_json(r.witness), "explored_states": r.explored_states}
    if args.count:
        payload["distinct_greedy_count"] = r.distinct_greedy_count
    text = f"opt {gio.format_weight(r.opt_weight)}\n" + gio.format_matching(r.witness)
    if args.count:
        text += f"# greedy matchings: {r.distinct_greedy_count}\n"
    _emit(args, payload, text)


def _decision_output(args, d):
    payload = {"answer": d.answer, "witness": _edges_json(d.witness) if d.witness else None,
               "explored_states": d.explored_states}
    text = ("yes\n" + gio.format_matching(d.witness)) if d.answer else "no"
    _emit(args, payload, text)


def cmd_decide_vertex(args):
    from .exact import decide_greedy_vertex

    _decision_output(args, decide_greedy_vertex(_graph(args.graph), args.vertex, args.budget))


def cmd_decide_edge(args):
    from .exact import decide_greedy_edge

    try:
        u, v = (int(t) for t in args.edge.split(","))
    except ValueError:
        raise InputError(f"--edge expects U,V, got {args.edge!r}") from None
    _decision_output(args, decide_greedy_edge(_graph(args.graph), (u, v), args.budget))


def cmd_solve_poly(args):
    from .poly import solve_lambda0_ge2

    r = solve_lambda0_ge2(_graph(args.graph))
    payload = {"opt_weight": _q(r.opt_weight), "witness": _edges_json(r.witness), "repairs": len(r.repairs),
               "initial_matching": _edges_json(r.initial_matching)}
    _emit(args, payload, f"opt {gio.format_weight(r.opt_weight)}\n" + gio.format_matching(r.witness)
          + f"# repairs: {len(r.repairs)}\n")


def cmd_rgma(args):
    from .bush import rgma, validate_bush
    from .graph import matching_weight
    from .mrg import mean_and_stderr
    from .seeding import derive_rng

    g = _graph(args.graph)
    bg = validate_bush(g)
    if args.trials == 1:
        m = rgma(bg, args.seed)
        w = matching_weight(g, m)
        _emit(args, {"matching": _edges_json(m), "weight": _q(w)},
              gio.format_matching(m) + f"# weight {gio.format_weight(w)}")
        return
    ws = [matching_weight(g, rgma(bg, derive_rng(args.seed, t))) for t in range(args.trials)]
    mean, se = mean_and_stderr(ws)
    _emit(args, {"trials": args.trials, "mean_weight": _q(mean) if mean is not None else None, "stderr": se},
          f"trials {args.trials}\nmean {float(mean) if mean is not None else 'n/a'}\nstderr {se}")


def cmd_rgma_exact(args):
    from .bush import rgma_expected_weight_exact

    e = rgma_expected_weight_exact(_graph(args.graph), args.budget)
    _emit(args, {"expected_weight": _q(e)}, gio.format_weight(e))


def cmd_bush_decompose(args):
    from .bush import bush_decompose

    g = _graph(args.graph)
    order = args.order
    if order.startswith("given:"):
        order = _read(order.split(":", 1)[1], lambda p: gio.parse_vertex_order(Path(p).read_text()), "order file")
    elif order != "random":
        raise InputError(f"--order expects random or given:FILE, got {order!r}")
    res = bush_decompose(g, order, args.seed)
    _write_text(args.out, gio.format_graph(res.bush_graph.graph))
    _emit(args, {"bushes": len(res.bush_graph.bushes), "epsilon": _q(res.epsilon)},
          f"{len(res.bush_graph.bushes)} bushes, epsilon {gio.format_weight(res.epsilon)}")


def cmd_mrg(args):
    from .exact import max_cardinality_matching
    from .mrg import mean_and_stderr, mrg
    from .seeding import derive_rng

    g = _graph(args.graph).unweighted()
    sizes = [len(mrg(g, derive_rng(args.seed, t, "mrg"), args.dead_picks)) for t in range(args.trials)]
    mean, se = mean_and_stderr(sizes)
    nu = len(max_cardinality_matching(g))
    payload = {"trials": args.trials, "mean_size": _q(mean) if mean is not None else None, "stderr": se,
               "max_cardinality": nu}
    _emit(args, payload, f"trials {args.trials}\nmean size {float(mean) if mean is not None else 'n/a'}\n"
          f"stderr {se}\nmax cardinality {nu}")


def cmd_compare(args):
    from .mrg import compare_rgma_mrg

    rep = compare_rgma_mrg(_graph(args.graph), args.trials, args.seed)
    cols = ["trials", "max_cardinality", "mrg_mean_ratio", "mrg_stderr", "rgma_mean_ratio", "rgma_stderr"]
    vals = [rep.trials, rep.max_cardinality,
            _q(rep.mrg_mean_ratio) if rep.mrg_mean_ratio is not None else "", rep.mrg_stderr if rep.mrg_stderr is not None else "",
            _q(rep.rgma_mean_ratio) if rep.rgma_mean_ratio is not None else "", rep.rgma_stderr if rep.rgma_stderr is not None else ""]
    text = ",".join(cols) + "\n" + ",".join(str(v) for v in vals) + "\n"
    if args.csv:
        _write_text(args.csv, text)
    print(text, end="")


def cmd_reduce(args):
    from .cnf import read_dimacs
    from .reductions import build_reduction, format_roles, save_reduction

    if not (args.out or args.dir):
        raise InputError("give --out (with optional --roles) or --dir")
    max_len = 3 if args.variant == "greedy-edge" else 2
    f = _read(args.cnf, lambda p: read_dimacs(p, max_len), "formula")
    r = build_reduction(f, args.variant, args.x, args.integer_weights)
    if args.out:
        _write_text(args.out, gio.format_graph(r.graph))
    if args.roles:
        _write_text(args.roles, format_roles(r))
    if args.dir:
        save_reduction(r, args.dir)
    payload = {"variant": r.variant, "n": r.n, "m": r.m, "x": r.x, "vertices": r.graph.n_vertices,
               "edges": r.graph.n_edges, "base_weight": _q(r.base_weight),
               "designated_edge": list(r.designated_edge) if r.designated_edge else None}
    _emit(args, payload, f"{r.variant}: n={r.n} m={r.m} |V|={r.graph.n_vertices} |E|={r.graph.n_edges}")


def cmd_certify(args):
    from .certificates import assignment_to_matching, matching_to_assignment
    from .cnf import satisfied_clauses
    from .graph import matching_weight
    from .reductions import load_reduction

    r = load_reduction(args.reduction)
    if args.direction == "a2m":
        tau = _read(args.input, lambda p: gio.parse_assignment(Path(p).read_text()), "assignment")
        m = assignment_to_matching(r, r.lift.from_source_assignment(tau))
        text = gio.format_matching(m)
        payload = {"matching": _edges_json(m), "weight": _q(matching_weight(r.graph, m))}
    else:
        m = _read(args.input, gio.read_matching, "matching")
        tau = matching_to_assignment(r, m)
        src = r.to_source_assignment(tau)
        text = gio.format_assignment(src)
        payload = {"assignment": {str(k): v for k, v in sorted(src.items())},
                   "satisfied": satisfied_clauses(r.source, src), "clauses": r.source.n_clauses}
    if args.out:
        _write_text(args.out, text)
    _emit(args, payload, text)


def cmd_experiment(args):
    from .harness import estimate_ratio, read_config, report

    cfg = read_config(args.config)
    estimates = estimate_ratio(cfg)
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise InputError(f"cannot create {out}: {exc}") from exc
    formats = ("csv", "json") if args.format == "both" else (args.format,)
    for fmt in formats:
        _write_text(out / f"report.{fmt}", report(estimates, fmt))
    skipped = sum(1 for e in estimates if e.status != "ok")
    print(f"{len(estimates)} estimates ({skipped} skipped) written to {out}")


def cmd_params(args):
    from .graph import graph_params, is_bipartite, lambda0

    g = _graph(args.graph)
    p = graph_params(g)
    lam = lambda0(g)
    payload = {"vertices": g.n_vertices, "edges": g.n_edges, "max_degree": g.max_degree(),
               "lambda0": "inf" if lam == float("inf") else _q(lam), "mu": p.mu if g.n_edges else None,
               "weights": [_q(w) for w in g.distinct_weights()], "bipartite": bool(is_bipartite(g))}
    _emit(args, payload, "\n".join(f"{k} {v}" for k, v in payload.items()))


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    from .exact import DEFAULT_BUDGET

    p = _Parser(prog="greedy", description="Greedy matching toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, fn, help_, graph=True, json_flag=True):
        sp = sub.add_parser(name, help=help_)
        if graph:
            sp.add_argument("--graph", required=True)
        if json_flag:
            sp.add_argument("--json", action="store_true")
        sp.set_defaults(func=fn)
        return sp

    sp = cmd("run", cmd_run, "one greedy run")
    sp.add_argument("--tie-break", default="random")
    sp.add_argument("--seed", type=int, default=0)
    sp = cmd("verify", cmd_verify, "check that a matching is greedy")
    sp.add_argument("--matching", required=True)
    sp = cmd("enumerate", cmd_enumerate, "list all greedy matchings")
    sp.add_argument("--limit", type=int, default=100_000)
    sp = cmd("solve", cmd_solve, "maximum weight greedy matching")
    sp.add_argument("--count", action="store_true")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp = cmd("decide-vertex", cmd_decide_vertex, "is a vertex matched by some greedy matching")
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp = cmd("decide-edge", cmd_decide_edge, "is an edge in some greedy matching")
    sp.add_argument("--edge", required=True, help="U,V")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    cmd("solve-poly", cmd_solve_poly, "polynomial solver for lambda0 >= 2")
    sp = cmd("rgma", cmd_rgma, "run RGMA on a bush graph")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=1)
    sp = cmd("rgma-exact", cmd_rgma_exact, "exact expected RGMA weight")
    sp.add_argument("--budget", type=int, default=1_000_000)
    sp = cmd("bush-decompose", cmd_bush_decompose, "bush decomposition of an unweighted graph")
    sp.add_argument("--order", default="random")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True)
    sp = cmd("mrg", cmd_mrg, "run MRG")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=1)
    sp.add_argument("--dead-picks", choices=("skip", "redraw"), default="skip")
    sp = cmd("compare", cmd_compare, "RGMA on bush decompositions against MRG", json_flag=False)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--csv")
    sp = cmd("reduce", cmd_reduce, "build a reduction graph from a CNF formula", graph=False)
    sp.add_argument("--cnf", required=True)
    sp.add_argument("--variant", choices=("main", "bipartite", "mu2", "greedy-edge"), default="main")
    sp.add_argument("--x", type=int, default=2)
    sp.add_argument("--integer-weights", action="store_true")
    sp.add_argument("--out")
    sp.add_argument("--roles")
    sp.add_argument("--dir", help="save a reduction directory usable by certify")
    sp = cmd("certify", cmd_certify, "convert assignments and greedy matchings", graph=False)
    sp.add_argument("--direction", choices=("a2m", "m2a"), required=True)
    sp.add_argument("--reduction", required=True)
    sp.add_argument("--input", required=True)
    sp.add_argument("--out")
    sp = cmd("experiment", cmd_experiment, "seeded ratio-estimation experiment", graph=False, json_flag=False)
    sp.add_argument("--config", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--format", choices=("csv", "json", "both"), default="both")
    cmd("params", cmd_params, "weight classes, lambda0, mu, bipartiteness")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except (BudgetExceededError, LimitExceededError) as exc:
        print(f"greedy: budget exceeded: {exc}", file=sys.stderr)
        best = getattr(exc, "best", None)
        if best is not None:
            print(f"greedy: best lower bound {gio.format_weight(Fraction(best))}", file=sys.stderr)
        return EXIT_BUDGET
    except InputError as exc:
        print(f"greedy: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GreedyMatchingError as exc:
        print(f"greedy: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
