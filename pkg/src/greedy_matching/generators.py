"""Random and exhaustive instance generators used by tests and experiments.

Every generator takes a ``random.Random`` (or a seed) and nothing else
random, so instances are reproducible from the seed alone.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .cnf import CnfFormula, is_satisfiable, normalize
from .graph import WeightedGraph, edge, unit_graph
from .greedy import check_random_state

# -- formulas --------------------------------------------------------------------


def random_cnf(rng, n_vars: int, n_clauses: int, max_len: int, max_occurrences: int = 3,
               attempts: int = 1000) -> Optional[CnfFormula]:
    """Uniform-ish formula with clause lengths ``1..max_len`` and bounded occurrences.

    Returns None if no valid formula was hit within ``attempts`` draws.
    """
    rng = check_random_state(rng)
    for _ in range(attempts):
        clauses = []
        for _ in range(n_clauses):
            size = rng.randint(1, max_len)
            if size > n_vars:
                size = n_vars
            vars_ = rng.sample(range(1, n_vars + 1), size)
            clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vars_))
        counts = {}
        for c in clauses:
            for lit in c:
                counts[abs(lit)] = counts.get(abs(lit), 0) + 1
        if max(counts.values(), default=0) <= max_occurrences:
            return CnfFormula(n_vars, tuple(clauses), max_len)
    return None


def random_normalized_2sat3(rng, max_vars: int = 3, max_clauses: int = 5):
    """A canonical 2SAT(3) formula with 1..max_vars variables and 1..max_clauses clauses.

    Draws raw formulas and normalizes them until the result fits.
    """
    rng = check_random_state(rng)
    while True:
        n0 = rng.randint(1, max_vars + 1)
        m0 = rng.randint(1, max_clauses)
        f = random_cnf(rng, n0, m0, 2)
        if f is None:
            continue
        nf = normalize(f)
        if 1 <= nf.n_vars <= max_vars and 1 <= nf.formula.n_clauses <= max_clauses:
            return nf


def random_3sat3(rng, max_vars: int = 4, max_clauses: int = 5, satisfiable: Optional[bool] = None):
    """A 3SAT(3) formula, optionally filtered on satisfiability by brute force."""
    rng = check_random_state(rng)
    while True:
        f = random_cnf(rng, rng.randint(1, max_vars), rng.randint(1, max_clauses), 3)
        if f is None:
            continue
        if satisfiable is None or is_satisfiable(f) == satisfiable:
            return f


def random_2cnf(rng, max_vars: int = 3, max_clauses: int = 4) -> CnfFormula:
    """Unrestricted-occurrence 2-CNF formula."""
    rng = check_random_state(rng)
    n = rng.randint(1, max_vars)
    f = random_cnf(rng, n, rng.randint(1, max_clauses), 2, max_occurrences=10**9)
    assert f is not None
    return f


# -- bush graphs -----------------------------------------------------------------


def _bush_graph_from(specs) -> WeightedGraph:
    weights = {}
    for center, leaves, w in specs:
        for leaf in leaves:
            weights[edge(center, leaf)] = w
    used = sorted({v for e in weights for v in e})
    relabel = {v: i for i, v in enumerate(used)}
    return WeightedGraph(len(used), {edge(relabel[a], relabel[b]): w for (a, b), w in weights.items()})


def random_bush_graph(rng, n_bushes: int, max_bush_size: int, weights: Sequence = None,
                      n_vertices: Optional[int] = None) -> WeightedGraph:
    """Random bush graph; bush ``i`` gets weight ``weights[i]`` (default ``n_bushes - i``).

    Centers and leaves are drawn from a pool of ``n_vertices`` vertices
    (default ``n_bushes + max_bush_size + 1``); a bush that cannot place any
    new edge is dropped. Isolated pool vertices are removed.
    """
    rng = check_random_state(rng)
    weights = list(weights) if weights is not None else list(range(n_bushes, 0, -1))
    assert all(a > b for a, b in zip(weights, weights[1:])), "bush weights must decrease"
    pool = n_vertices or n_bushes + max_bush_size + 1
    taken = set()
    specs = []
    for i in range(n_bushes):
        center = rng.randrange(pool)
        free = [v for v in range(pool) if v != center and edge(center, v) not in taken]
        size = min(rng.randint(1, max_bush_size), len(free))
        if size == 0:
            continue
        leaves = rng.sample(free, size)
        taken.update(edge(center, v) for v in leaves)
        specs.append((center, leaves, Fraction(weights[i])))
    return _bush_graph_from(specs)


def two_weight_bush_graphs(max_size: int = 5, weight_pairs=((2, 1),)) -> Iterator[WeightedGraph]:
    """Every two-bush graph with bush sizes <= ``max_size``, up to isomorphism.

    Bush 1 is a star at ``c`` with ``a`` leaves. Bush 2 has ``b`` leaves and
    its center is ``c``, a leaf of bush 1, or a new vertex; its leaves split
    into ``c`` itself, leaves of bush 1, and new vertices. Weight pairs are
    ``(w1, w2)`` with ``w1 > w2``.
    """
    for w1, w2 in weight_pairs:
        w1, w2 = Fraction(w1), Fraction(w2)
        assert w1 > w2
        for a in range(1, max_size + 1):
            for center_kind in ("c", "leaf", "new"):
                for b in range(1, max_size + 1):
                    # c can be a bush-2 leaf only when bush 2 is centred at a new vertex
                    for use_c in ((0, 1) if center_kind == "new" else (0,)):
                        max_old = a - (1 if center_kind == "leaf" else 0)
                        for old in range(0, min(max_old, b - use_c) + 1):
                            new = b - use_c - old
                            if center_kind == "c" and old:
                                continue
                            yield _two_bush(a, center_kind, use_c, old, new, w1, w2)


def _two_bush(a, center_kind, use_c, old, new, w1, w2) -> WeightedGraph:
    n = 1 + a
    weights = {edge(0, x): w1 for x in range(1, a + 1)}
    if center_kind == "c":
        c2 = 0
    elif center_kind == "leaf":
        c2 = 1
    else:
        c2, n = n, n + 1
    leaves = [0] * use_c
    leaves += [x for x in range(1, a + 1) if x != c2][:old]
    leaves += list(range(n, n + new))
    n += new
    for x in leaves:
        weights[edge(c2, x)] = w2
    return WeightedGraph(n, weights)


def random_small_bush_graph(rng, max_bushes: int = 8) -> WeightedGraph:
    """Bush graph in which every bush has one or two edges."""
    rng = check_random_state(rng)
    k = rng.randint(1, max_bushes)
    return random_bush_graph(rng, k, 2, n_vertices=rng.randint(3, k + 4))


# -- general graphs ----------------------------------------------------------------


def random_graph(rng, n_vertices: int, p: float) -> WeightedGraph:
    """Erdos-Renyi G(n, p) with unit weights."""
    rng = check_random_state(rng)
    edges = [(u, v) for u, v in itertools.combinations(range(n_vertices), 2) if rng.random() < p]
    return unit_graph(n_vertices, edges)


def random_weighted_graph(rng, n_vertices: int, p: float, weights: Sequence) -> WeightedGraph:
    """G(n, p) with each edge weight drawn uniformly from ``weights``."""
    rng = check_random_state(rng)
    ws = [Fraction(w) for w in weights]
    out = {}
    for u, v in itertools.combinations(range(n_vertices), 2):
        if rng.random() < p:
            out[(u, v)] = ws[rng.randrange(len(ws))]
    return WeightedGraph(n_vertices, out)


def random_lambda0_ge2_graph(rng, max_edges: int = 12, max_vertices: int = 9,
                             n_classes: int = 4) -> WeightedGraph:
    """Random graph whose weights are powers of two, so consecutive ratios are >= 2."""
    rng = check_random_state(rng)
    n = rng.randint(2, max_vertices)
    pairs = list(itertools.combinations(range(n), 2))
    chosen = rng.sample(pairs, rng.randint(1, min(max_edges, len(pairs))))
    return WeightedGraph(n, {e: 2 ** rng.randrange(n_classes) for e in chosen})


def random_connected_graph(rng, n_vertices: int, p: float) -> WeightedGraph:
    """Random spanning tree plus G(n, p) extra edges, unit weights."""
    rng = check_random_state(rng)
    edges = set()
    order = list(range(n_vertices))
    rng.shuffle(order)
    for i in range(1, n_vertices):
        edges.add(edge(order[i], order[rng.randrange(i)]))
    for u, v in itertools.combinations(range(n_vertices), 2):
        if rng.random() < p:
            edges.add((u, v))
    return unit_graph(n_vertices, sorted(edges))


def path_graph(weights: Sequence) -> WeightedGraph:
    return WeightedGraph(len(weights) + 1, {(i, i + 1): w for i, w in enumerate(weights)})


def star_graph(k: int, weight=1) -> WeightedGraph:
    return WeightedGraph(k + 1, {(0, i): weight for i in range(1, k + 1)})


__all__ = [
    "random_cnf",
    "random_normalized_2sat3",
    "random_3sat3",
    "random_2cnf",
    "random_bush_graph",
    "random_small_bush_graph",
    "two_weight_bush_graphs",
    "random_graph",
    "random_weighted_graph",
    "random_lambda0_ge2_graph",
    "random_connected_graph",
    "path_graph",
    "star_graph",
]
