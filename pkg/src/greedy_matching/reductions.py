"""Gadget constructions turning CNF formulas into weighted graphs.

Every variable becomes a 10-vertex path

    beta - p - q - r - alpha - gamma - y - z - s - t

and every clause a single vertex joined to one terminal of each of its
literals' gadgets: the positive literal to ``alpha``, the first negative
occurrence (in clause order) to ``beta`` and the second to ``gamma``. The
encoded formula is always in canonical form: each variable occurs once
positively and once or twice negatively.

Vertex ids are fixed: gadget ``i`` (1-based) occupies ``10(i-1) .. 10(i-1)+9``
in path order, clause ``j`` is vertex ``10n + j - 1``, and the extra vertices
of the GreedyEdge variant are ``u = 10n + m`` and ``u* = 10n + m + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from .cnf import CnfFormula, NormalizedFormula, format_dimacs, is_normalized, normalize, read_dimacs
from .errors import InputError, ParseError, PreconditionError
from .graph import Edge, WeightedGraph, edge

PATH = ("beta", "p", "q", "r", "alpha", "gamma", "y", "z", "s", "t")
TERMINALS = ("alpha", "beta", "gamma")
VARIANTS = ("main", "bipartite", "mu2", "greedy-edge")

MU2_PATH_WEIGHTS = (2, 4, 5, 5, 4, 5, 5, 4, 2)
MU2_CONNECTORS = {"alpha": 3, "beta": 1, "gamma": 3}


def main_path_weights(x: int) -> tuple:
    return (1, x + 1, 2 * x, 2 * x, 2 * x, 2 * x, 2 * x, x + 1, 1)


def main_connectors(x: int) -> dict:
    return {"alpha": x + 1, "beta": 1, "gamma": x + 1}


@dataclass(frozen=True)
class ReductionOutput:
    """A constructed instance together with everything needed to read it back.

    ``formula`` is the canonical formula the gadgets encode and ``lift``
    relates it to ``source``, the formula the caller supplied.
    ``attachments[j]`` lists ``(variable, terminal)`` for clause ``j + 1``.
    """

    graph: WeightedGraph
    roles: dict
    variant: str
    x: Optional[int]
    formula: CnfFormula
    lift: NormalizedFormula
    source: CnfFormula
    gadgets: tuple
    clause_vertices: tuple
    attachments: tuple
    base_weight: Fraction
    designated_vertex: Optional[int] = None
    designated_edge: Optional[Edge] = None
    integer_weights: bool = field(default=False)

    @property
    def n(self) -> int:
        return self.formula.n_vars

    @property
    def m(self) -> int:
        return self.formula.n_clauses

    def gadget_vertex(self, i: int, name: str) -> int:
        return self.gadgets[i - 1][name]

    def clause_vertex(self, j: int) -> int:
        return self.clause_vertices[j - 1]

    def to_source_assignment(self, tau) -> dict:
        return self.lift.to_source_assignment(tau)


def _attachments(f: CnfFormula) -> tuple:
    seen_negative: dict[int, int] = {}
    out = []
    for clause in f.clauses:
        row = []
        for lit in clause:
            v = abs(lit)
            if lit > 0:
                row.append((v, "alpha"))
            else:
                k = seen_negative.get(v, 0)
                seen_negative[v] = k + 1
                row.append((v, ("beta", "gamma")[k]))
        out.append(tuple(row))
    return tuple(out)


def _check_canonical(f: CnfFormula, max_clause_len: int):
    if not is_normalized(f):
        bad = {v: pq for v, pq in f.occurrences().items() if pq[0] != 1 or pq[1] not in (1, 2)}
        raise PreconditionError(
            f"formula is not in canonical form (variable -> (positive, negative) counts: {bad})"
        )
    for j, clause in enumerate(f.clauses, start=1):
        if len(clause) > max_clause_len:
            raise PreconditionError(f"clause {j} has {len(clause)} literals (max {max_clause_len})")


def _lift_of(f: Union[CnfFormula, NormalizedFormula], max_clause_len: int) -> NormalizedFormula:
    if isinstance(f, NormalizedFormula):
        _check_canonical(f.formula, max_clause_len)
        return f
    for j, clause in enumerate(f.clauses, start=1):
        if len(clause) > max_clause_len:
            raise PreconditionError(f"clause {j} has {len(clause)} literals (max {max_clause_len})")
    return normalize(f)


def _assemble(lift: NormalizedFormula, variant, x, path_w, conn_w, base, extra_edges=None, scale=1):
    f = lift.formula
    n, m = f.n_vars, f.n_clauses
    weights: dict[Edge, Fraction] = {}
    labels: dict[int, str] = {}
    roles: dict[int, str] = {}
    gadgets = []
    for i in range(1, n + 1):
        ids = {name: 10 * (i - 1) + k for k, name in enumerate(PATH)}
        gadgets.append(ids)
        for k, name in enumerate(PATH):
            labels[ids[name]] = f"{name}{i}"
            roles[ids[name]] = f"{name}({i})" if name in TERMINALS else f"internal({i},{name})"
        for k, w in enumerate(path_w):
            weights[edge(ids[PATH[k]], ids[PATH[k + 1]])] = Fraction(w) * scale
    attach = _attachments(f)
    clause_vertices = tuple(10 * n + j for j in range(m))
    for j, row in enumerate(attach):
        vj = clause_vertices[j]
        labels[vj] = f"v{j + 1}"
        roles[vj] = f"clause({j + 1})"
        for var, terminal in row:
            weights[edge(vj, gadgets[var - 1][terminal])] = Fraction(conn_w[terminal]) * scale
    n_vertices = 10 * n + m
    designated_vertex = designated_edge = None
    if extra_edges:
        u, ustar = n_vertices, n_vertices + 1
        labels[u], labels[ustar] = "u", "u*"
        roles[u], roles[ustar] = "u", "ustar"
        half, quarter = extra_edges
        for vj in clause_vertices:
            weights[edge(vj, u)] = half * scale
        weights[edge(u, ustar)] = quarter * scale
        n_vertices += 2
        designated_vertex, designated_edge = ustar, edge(u, ustar)
    graph = WeightedGraph(n_vertices, weights, labels)
    return ReductionOutput(
        graph=graph,
        roles=roles,
        variant=variant,
        x=x,
        formula=f,
        lift=lift,
        source=lift.source,
        gadgets=tuple(gadgets),
        clause_vertices=clause_vertices,
        attachments=attach,
        base_weight=Fraction(base) * scale,
        designated_vertex=designated_vertex,
        designated_edge=designated_edge,
        integer_weights=scale != 1,
    )


def build_main_reduction(f: Union[CnfFormula, NormalizedFormula], x: int = 2) -> ReductionOutput:
    """Gadget graph for a 2SAT(3) formula with heavy weight ``2x``.

    A plain formula is normalized first. Greedy optimum is
    ``(6x+2) n + k*`` where ``k*`` is the MAX-SAT value of the canonical formula.
    """
    if not isinstance(x, int) or x < 2:
        raise InputError(f"x must be an integer >= 2, got {x!r}")
    lift = _lift_of(f, 2)
    return _assemble(lift, "main", x, main_path_weights(x), main_connectors(x), 6 * x + 2)


def build_mu2_reduction(f: Union[CnfFormula, NormalizedFormula]) -> ReductionOutput:
    """Variant whose weight classes have components of at most two edges; optimum ``18n + k*``."""
    lift = _lift_of(f, 2)
    return _assemble(lift, "mu2", None, MU2_PATH_WEIGHTS, MU2_CONNECTORS, 18)


def build_greedy_edge_reduction(
    f: Union[CnfFormula, NormalizedFormula], integer_weights: bool = False
) -> ReductionOutput:
    """Main construction at ``x = 2`` for clauses of up to three literals, plus ``u`` and ``u*``.

    ``u`` joins every clause vertex with weight 1/2 and ``u*`` hangs off ``u``
    with weight 1/4. ``integer_weights=True`` multiplies every weight by 4.
    """
    lift = _lift_of(f, 3)
    scale = 4 if integer_weights else 1
    return _assemble(
        lift, "greedy-edge", 2, main_path_weights(2), main_connectors(2), 14,
        extra_edges=(Fraction(1, 2), Fraction(1, 4)), scale=scale,
    )


# -- bipartite variant -----------------------------------------------------------


def pad_occurrences(f: CnfFormula, minimum: int = 3) -> CnfFormula:
    """Append copies of existing clauses until every occurring variable occurs >= ``minimum`` times.

    The copy is always the first clause containing the variable.
    """
    clauses = list(f.clauses)
    for v in range(1, f.n_vars + 1):
        first = next((c for c in clauses if v in c or -v in c), None)
        if first is None:
            continue
        while sum(1 for c in clauses for lit in c if abs(lit) == v) < minimum:
            clauses.append(first)
    return CnfFormula(f.n_vars, tuple(clauses), f.max_clause_len)


@dataclass(frozen=True)
class Expansion:
    """Result of replacing each variable by a cycle of copies, one per occurrence.

    ``formula`` lists the rewritten original clauses first and then the cycle
    clauses ``(not x_k or x_{k+1})``; ``origin[i - 1]`` is the source
    variable of copy ``i``; ``n_original_clauses`` counts the leading block.
    """

    formula: CnfFormula
    origin: tuple
    n_original_clauses: int
    padded: CnfFormula


def expand_variables(f: CnfFormula) -> Expansion:
    padded = pad_occurrences(f)
    copies: dict[int, list[int]] = {}
    origin = []
    rewritten = []
    for clause in padded.clauses:
        row = []
        for lit in clause:
            origin.append(abs(lit))
            new = len(origin)
            copies.setdefault(abs(lit), []).append(new)
            row.append(new if lit > 0 else -new)
        rewritten.append(tuple(row))
    cycle = []
    for v in sorted(copies):
        ring = copies[v]
        for k, a in enumerate(ring):
            cycle.append((-a, ring[(k + 1) % len(ring)]))
    formula = CnfFormula(len(origin), tuple(rewritten) + tuple(cycle), 2)
    return Expansion(formula, tuple(origin), len(rewritten), padded)


def build_bipartite_reduction(f: CnfFormula, x: int = 2) -> ReductionOutput:
    """Bipartite gadget graph for an arbitrary 2-CNF formula.

    After expansion each copy occurs three times: once in its original clause
    and once with each sign in the cycle. The sign that occurs twice is
    encoded at ``beta``/``gamma`` and the other at ``alpha``: original
    clauses go to ``gamma`` and cycle clauses to ``alpha`` or ``beta``. In
    the path 2-colouring ``alpha`` and ``beta`` share a colour opposite to
    ``gamma``, so original clause vertices only see one side and cycle
    clause vertices only the other.
    """
    if not isinstance(x, int) or x < 2:
        raise InputError(f"x must be an integer >= 2, got {x!r}")
    for j, clause in enumerate(f.clauses, start=1):
        if len(clause) > 2:
            raise PreconditionError(f"clause {j} has {len(clause)} literals (max 2)")
    exp = expand_variables(f)
    occ = exp.formula.occurrences()
    flipped = {v for v, (pos, _) in occ.items() if pos == 2}

    def canon(lit):
        return -lit if abs(lit) in flipped else lit

    old = exp.formula.clauses[: exp.n_original_clauses]
    cyc = exp.formula.clauses[exp.n_original_clauses:]
    # cycle clauses first, so each copy's cycle negative takes beta and its
    # original-clause negative takes gamma
    clauses = tuple(tuple(canon(l) for l in c) for c in cyc + old)
    canonical = CnfFormula(exp.formula.n_vars, clauses, 2)
    provenance = tuple((exp.origin[i - 1], i in flipped) for i in range(1, canonical.n_vars + 1))
    lift = NormalizedFormula(canonical, f, provenance, {}, ())
    out = _assemble(lift, "bipartite", x, main_path_weights(x), main_connectors(x), 6 * x + 2)
    for j, row in enumerate(out.attachments):
        terminals = {t for _, t in row}
        expected = {"alpha", "beta"} if j < len(cyc) else {"gamma"}
        assert terminals <= expected, f"clause {j + 1} wired to {terminals}"
    return out


def build_reduction(f: CnfFormula, variant: str, x: int = 2, integer_weights: bool = False) -> ReductionOutput:
    if variant == "main":
        return build_main_reduction(f, x)
    if variant == "bipartite":
        return build_bipartite_reduction(f, x)
    if variant == "mu2":
        return build_mu2_reduction(f)
    if variant == "greedy-edge":
        return build_greedy_edge_reduction(f, integer_weights)
    raise InputError(f"unknown variant {variant!r} (choose from {', '.join(VARIANTS)})")


# -- persistence -----------------------------------------------------------------


def format_roles(r: ReductionOutput) -> str:
    return "".join(f"role {v} {tag}\n" for v, tag in sorted(r.roles.items()))


def parse_roles(text: str) -> dict:
    roles = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] != "role":
            raise ParseError("expected 'role <vertex> <tag>'", lineno)
        try:
            roles[int(parts[1])] = parts[2]
        except ValueError:
            raise ParseError(f"bad vertex {parts[1]!r}", lineno) from None
    return roles


def save_reduction(r: ReductionOutput, directory) -> Path:
    """Write formula, parameters, graph and roles so the instance can be rebuilt."""
    from .io import format_graph

    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    max_len = 3 if r.variant == "greedy-edge" else 2
    source = CnfFormula(r.source.n_vars, r.source.clauses, max_len)
    (d / "formula.cnf").write_text(format_dimacs(source))
    params = [f"variant={r.variant}"]
    if r.x is not None and r.variant != "greedy-edge":
        params.append(f"x={r.x}")
    if r.integer_weights:
        params.append("integer_weights=true")
    (d / "params").write_text("\n".join(params) + "\n")
    (d / "graph.txt").write_text(format_graph(r.graph))
    (d / "roles.txt").write_text(format_roles(r))
    return d


def load_reduction(directory) -> ReductionOutput:
    """Rebuild a reduction saved by :func:`save_reduction` and check it against the stored graph."""
    from .io import read_graph

    d = Path(directory)
    params = {}
    try:
        for lineno, raw in enumerate((d / "params").read_text().splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParseError("expected key=value", lineno)
            key, value = (s.strip() for s in line.split("=", 1))
            params[key] = value
        variant = params.get("variant", "main")
        source = read_dimacs(d / "formula.cnf", 3 if variant == "greedy-edge" else 2)
    except OSError as exc:
        raise InputError(f"cannot read reduction directory {d}: {exc}") from exc
    try:
        x = int(params.get("x", "2"))
    except ValueError:
        raise InputError(f"bad x in {d / 'params'}") from None
    r = build_reduction(source, variant, x, params.get("integer_weights") == "true")
    graph_file = d / "graph.txt"
    if graph_file.exists() and read_graph(graph_file).weight_map() != r.graph.weight_map():
        raise InputError(f"{graph_file} does not match the graph rebuilt from formula.cnf")
    return r


__all__ = [
    "ReductionOutput",
    "Expansion",
    "build_main_reduction",
    "build_bipartite_reduction",
    "build_mu2_reduction",
    "build_greedy_edge_reduction",
    "build_reduction",
    "pad_occurrences",
    "expand_variables",
    "format_roles",
    "parse_roles",
    "save_reduction",
    "load_reduction",
    "main_path_weights",
]
