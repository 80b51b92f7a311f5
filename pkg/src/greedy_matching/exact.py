"""Exact maximum weight greedy matching and the vertex/edge decision problems.

All searches walk the same tree: at each residual graph, the greedy
procedure exhausts its heaviest class by one of that class's maximal
matchings. Residual graphs that fall apart into several connected
components are solved component by component. Results are memoized on the
residual edge set, and a per-class cardinality bound prunes choices that
cannot beat the best one found so far.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ._residual import ResidualEngine
from .errors import BudgetExceededError, InputError, PreconditionError
from .graph import Edge, WeightedGraph, check_matching, edge, matching_weight
from .greedy import PriorityTieBreak, is_greedy, run_greedy

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class SolveResult:
    opt_weight: Fraction
    witness: frozenset
    explored_states: int
    distinct_greedy_count: Optional[int] = None


class _Search:
    def __init__(self, g: WeightedGraph, budget: Optional[int]):
        self.g = g
        self.eng = ResidualEngine(g)
        self.budget = budget
        self.explored = 0
        self.steps = 0
        if budget is not None:
            self.eng.on_step = self.step

    def step(self):
        # enumeration nodes are capped by the same number as states
        self.steps += 1
        if self.steps > self.budget:
            self.overflow(f"maximal-matching enumeration exceeded {self.budget} steps")

    def tick(self):
        self.explored += 1
        if self.budget is not None and self.explored > self.budget:
            self.overflow(f"search exceeded {self.budget} states")

    def overflow(self, message):
        fallback = run_greedy(self.g, "lex").matching
        raise BudgetExceededError(
            message,
            explored=self.explored,
            best=matching_weight(self.g, fallback),
            witness=fallback,
        )


class _Optimizer(_Search):
    def __init__(self, g, budget):
        super().__init__(g, budget)
        self.memo: dict[frozenset, tuple[int, tuple]] = {}

    def opt(self, state):
        if not state:
            return 0, ()
        total, witness = 0, ()
        for comp in self.eng.components(state):
            value, part = self.opt_connected(comp)
            total += value
            witness += part
        return total, witness

    def opt_connected(self, state):
        hit = self.memo.get(state)
        if hit is not None:
            return hit
        self.tick()
        eng = self.eng
        w, choices = eng.class_choices(state)
        best, best_witness = -1, ()
        for choice in choices:
            rest = eng.remove_vertices(state, eng.vertices_of(choice))
            gain = w * len(choice)
            if gain + eng.upper_bound(rest) <= best:
                continue
            value, tail = self.opt(rest)
            if gain + value > best:
                best, best_witness = gain + value, choice + tail
        self.memo[state] = (best, best_witness)
        return best, best_witness


class _Counter(_Search):
    def __init__(self, g, budget):
        super().__init__(g, budget)
        self.memo: dict[frozenset, int] = {}

    def count(self, state):
        result = 1
        for comp in self.eng.components(state):
            result *= self.count_connected(comp)
        return result

    def count_connected(self, state):
        hit = self.memo.get(state)
        if hit is not None:
            return hit
        self.tick()
        eng = self.eng
        _, choices = eng.class_choices(state)
        total = sum(self.count(eng.remove_vertices(state, eng.vertices_of(c))) for c in choices)
        self.memo[state] = total
        return total


def solve_exact(g: WeightedGraph, budget: Optional[int] = DEFAULT_BUDGET, count: bool = False) -> SolveResult:
    """Maximum weight over all greedy matchings of ``g``, with a witness.

    ``budget`` caps the number of distinct residual states expanded; past it
    :class:`BudgetExceededError` is raised carrying a greedy lower bound.
    With ``count=True`` the number of distinct greedy matchings is also
    computed (distinct class choices always yield distinct matchings).
    """
    search = _Optimizer(g, budget)
    value, witness = search.opt(search.eng.full)
    n_greedy = None
    if count:
        counter = _Counter(g, budget)
        n_greedy = counter.count(counter.eng.full)
    return SolveResult(
        opt_weight=search.eng.to_weight(value),
        witness=search.eng.to_edges(witness),
        explored_states=search.explored,
        distinct_greedy_count=n_greedy,
    )


def count_greedy_matchings(g: WeightedGraph, budget: Optional[int] = DEFAULT_BUDGET) -> int:
    counter = _Counter(g, budget)
    return counter.count(counter.eng.full)


# -- decision problems -----------------------------------------------------------


class _Decider(_Search):
    """Existential search for a greedy run whose choices satisfy ``hit``.

    Only the component holding the target matters; the rest of the graph is
    independent of it. ``hit(choice)`` returns True (target matched), False
    (target destroyed) or None (undecided, recurse).
    """

    def __init__(self, g, budget, anchor, hit):
        super().__init__(g, budget)
        self.anchor = anchor
        self.hit = hit
        self.memo: dict[frozenset, Optional[tuple]] = {}

    def search(self, state):
        comp = self.eng.component_containing(state, self.anchor)
        if comp is None:
            return None
        if comp in self.memo:
            return self.memo[comp]
        self.tick()
        eng = self.eng
        _, choices = eng.class_choices(comp)
        found = None
        for choice in choices:
            verdict = self.hit(choice)
            if verdict is True:
                found = (choice,)
                break
            if verdict is False:
                continue
            tail = self.search(eng.remove_vertices(comp, eng.vertices_of(choice)))
            if tail is not None:
                found = (choice,) + tail
                break
        self.memo[comp] = found
        return found

    def witness(self, path) -> frozenset:
        # Complete the path choices into a full greedy run; other components
        # are unaffected by the order in which they are processed.
        order = [self.eng.ends[i] for choice in path for i in choice]
        run = run_greedy(self.g, PriorityTieBreak(order))
        assert set(order) <= run.matching and is_greedy(self.g, run.matching)
        return run.matching


@dataclass(frozen=True)
class Decision:
    answer: bool
    witness: Optional[frozenset]
    explored_states: int

    def __bool__(self) -> bool:
        return self.answer


def decide_greedy_vertex(g: WeightedGraph, v: int, budget: Optional[int] = DEFAULT_BUDGET) -> Decision:
    """Is ``v`` matched in some greedy matching of ``g``?"""
    if not 0 <= v < g.n_vertices:
        raise InputError(f"vertex {v} not in graph")
    dec = _Decider(g, budget, v, None)
    dec.hit = lambda choice: True if v in dec.eng.vertices_of(choice) else None
    path = dec.search(dec.eng.full)
    return Decision(path is not None, dec.witness(path) if path else None, dec.explored)


def decide_greedy_edge(g: WeightedGraph, e: Edge, budget: Optional[int] = DEFAULT_BUDGET) -> Decision:
    """Is the edge ``e`` in some greedy matching of ``g``?"""
    a, b = e
    if not g.has_edge(a, b):
        raise InputError(f"({a}, {b}) is not an edge of the graph")
    target = edge(a, b)
    dec = _Decider(g, budget, a, None)
    index = dec.eng.ends.index(target)

    def hit(choice):
        if index in choice:
            return True
        touched = dec.eng.vertices_of(choice)
        return False if (a in touched or b in touched) else None

    dec.hit = hit
    path = dec.search(dec.eng.full)
    return Decision(path is not None, dec.witness(path) if path else None, dec.explored)


# -- ordinary (non-greedy) matchings ---------------------------------------------


def _integer_weights(g: WeightedGraph) -> dict[Edge, int]:
    weights = g.weight_map()
    scale = math.lcm(*(w.denominator for w in weights.values())) if weights else 1
    return {e: int(w * scale) for e, w in weights.items()}


def max_weight_matching(g: WeightedGraph) -> frozenset:
    """Maximum weight matching over all matchings (blossom algorithm).

    Weights are rescaled to integers first, which keeps the blossom dual
    updates in exact integer arithmetic.
    """
    import networkx as nx

    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices)
    for (u, v), w in _integer_weights(g).items():
        nxg.add_edge(u, v, weight=w)
    return frozenset(edge(u, v) for u, v in nx.max_weight_matching(nxg))


def max_cardinality_matching(g: WeightedGraph) -> frozenset:
    """Maximum cardinality matching, ignoring weights."""
    import networkx as nx

    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices)
    nxg.add_edges_from(g.edges)
    return frozenset(edge(u, v) for u, v in nx.max_weight_matching(nxg, maxcardinality=True, weight=None))


BRUTE_FORCE_EDGE_LIMIT = 24


def brute_force_max_weight_matching(g: WeightedGraph) -> frozenset:
    """Exhaustive maximum weight matching for small graphs (<= 24 edges)."""
    if g.n_edges > BRUTE_FORCE_EDGE_LIMIT:
        raise PreconditionError(f"brute force limited to {BRUTE_FORCE_EDGE_LIMIT} edges")
    weights = _integer_weights(g)
    edges = g.edges
    best = (0, ())

    def rec(i, used, chosen, total):
        nonlocal best
        if total > best[0]:
            best = (total, chosen)
        for j in range(i, len(edges)):
            u, v = edges[j]
            if u not in used and v not in used:
                rec(j + 1, used | {u, v}, chosen + (edges[j],), total + weights[edges[j]])

    rec(0, frozenset(), (), 0)
    return frozenset(best[1])


def all_matchings(g: WeightedGraph):
    """Yield every matching of ``g`` (including the empty one)."""
    edges = g.edges

    def rec(i, used, chosen):
        yield frozenset(chosen)
        for j in range(i, len(edges)):
            u, v = edges[j]
            if u not in used and v not in used:
                yield from rec(j + 1, used | {u, v}, chosen + (edges[j],))

    yield from rec(0, frozenset(), ())


def greedy_witness_is_valid(g: WeightedGraph, result: SolveResult) -> bool:
    m = check_matching(g, result.witness)
    return is_greedy(g, m) and matching_weight(g, m) == result.opt_weight


__all__ = [
    "SolveResult",
    "Decision",
    "solve_exact",
    "count_greedy_matchings",
    "decide_greedy_vertex",
    "decide_greedy_edge",
    "max_weight_matching",
    "max_cardinality_matching",
    "brute_force_max_weight_matching",
    "all_matchings",
]
