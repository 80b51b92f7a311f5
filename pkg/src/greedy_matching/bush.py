"""Bush graphs, the RGMA randomized greedy algorithm, and Bush Decomposition.

A bush graph is a weighted graph in which the edges of every weight class
form a star. RGMA visits the bushes heaviest first and matches a uniformly
random surviving edge of each.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import BudgetExceededError, InputError, NotABushGraphError
from .graph import Edge, WeightedGraph, edge, weight_classes
from .greedy import check_random_state


@dataclass(frozen=True)
class Bush:
    center: int
    leaves: tuple
    weight: Fraction

    @property
    def edges(self) -> tuple:
        return tuple(edge(self.center, x) for x in self.leaves)

    def __len__(self) -> int:
        return len(self.leaves)


@dataclass(frozen=True)
class BushGraph:
    graph: WeightedGraph
    bushes: tuple  # of Bush, strictly decreasing weight


def _star_center(edges: list, hint: Optional[int]):
    common = set(edges[0])
    for e in edges[1:]:
        common &= set(e)
    if len(edges) == 1:
        return hint if hint in common else min(common), None
    if common:
        return common.pop(), None
    for i, e in enumerate(edges):
        for f in edges[i + 1:]:
            if not set(e) & set(f):
                return None, (e, f)
    # pairwise intersecting but no common vertex: a triangle
    a = edges[0]
    b = next(f for f in edges[1:] if f != a)
    c = next(f for f in edges if not (set(a) & set(b)) <= set(f))
    return None, (a, b, c)


def validate_bush(g: WeightedGraph, centers: Optional[dict] = None) -> BushGraph:
    """Check that every weight class of ``g`` is a star and return its bushes.

    ``centers`` optionally maps weight -> preferred center, used when a class
    is a single edge and either endpoint would do.
    """
    centers = centers or {}
    bushes = []
    for w, es in weight_classes(g):
        es = sorted(es)
        center, witness = _star_center(es, centers.get(w))
        if witness is not None:
            raise NotABushGraphError(
                f"edges of weight {w} do not form a star: {list(witness)}", witness
            )
        leaves = tuple(sorted(u if v == center else v for u, v in es))
        bushes.append(Bush(center, leaves, w))
    return BushGraph(g, tuple(bushes))


def _as_bush_graph(b: Union[BushGraph, WeightedGraph]) -> BushGraph:
    return b if isinstance(b, BushGraph) else validate_bush(b)


def rgma(b: Union[BushGraph, WeightedGraph], seed=None) -> frozenset:
    """One run of RGMA; the result is always a greedy matching."""
    bg = _as_bush_graph(b)
    rng = check_random_state(seed)
    used = set()
    matching = set()
    for bush in bg.bushes:
        if bush.center in used:
            continue
        alive = [x for x in bush.leaves if x not in used]
        if not alive:
            continue
        leaf = alive[rng.randrange(len(alive))]
        matching.add(edge(bush.center, leaf))
        used.add(bush.center)
        used.add(leaf)
    return frozenset(matching)


def rgma_expected_weight_exact(b: Union[BushGraph, WeightedGraph], budget: Optional[int] = 1_000_000) -> Fraction:
    """Exact expected weight of the RGMA output, over its whole probability tree.

    The state before bush ``i`` is the set of matched vertices that still
    matter for bushes ``i..``; leaves leading to the same state are grouped
    so their subtrees are evaluated once.
    """
    bg = _as_bush_graph(b)
    bushes = bg.bushes
    relevant = [frozenset()] * (len(bushes) + 1)
    for i in range(len(bushes) - 1, -1, -1):
        relevant[i] = relevant[i + 1] | {bushes[i].center, *bushes[i].leaves}
    memo: dict = {}

    def expect(i: int, used: frozenset) -> Fraction:
        if i == len(bushes):
            return Fraction(0)
        used = used & relevant[i]
        key = (i, used)
        if key in memo:
            return memo[key]
        if budget is not None and len(memo) >= budget:
            raise BudgetExceededError(f"RGMA expectation exceeded {budget} states", explored=len(memo))
        bush = bushes[i]
        alive = [] if bush.center in used else [x for x in bush.leaves if x not in used]
        if not alive:
            value = expect(i + 1, used)
        else:
            groups: dict[frozenset, int] = {}
            for leaf in alive:
                nxt = (used | {bush.center, leaf}) & relevant[i + 1]
                groups[nxt] = groups.get(nxt, 0) + 1
            value = bush.weight + sum(
                Fraction(count, len(alive)) * expect(i + 1, nxt) for nxt, count in groups.items()
            )
        memo[key] = value
        return value

    return expect(0, frozenset())


@dataclass(frozen=True)
class BushDecompositionResult:
    bush_graph: BushGraph
    rank_of: dict  # edge -> step index k
    epsilon: Fraction


def decomposition_epsilon(n_vertices: int) -> Fraction:
    return Fraction(1, n_vertices**3 + 1)


def bush_decompose(
    g: WeightedGraph, order: Union[str, Sequence[int]] = "random", seed=None
) -> BushDecompositionResult:
    """Turn an unweighted graph into a bush graph.

    Repeatedly pick a vertex ``u`` that still has edges, give all of them
    weight ``1 - k*eps`` (``k`` counts the steps so far) and delete them.
    ``order`` is ``"random"`` (uniform among vertices with edges left, from
    the seeded stream) or an explicit vertex sequence; vertices without
    remaining edges are skipped, and if the sequence runs out the lowest
    remaining vertex is used. Input weights are ignored.
    """
    eps = decomposition_epsilon(g.n_vertices)
    rng = check_random_state(seed)
    if isinstance(order, str):
        if order != "random":
            raise InputError(f"unknown vertex order policy {order!r}")
        explicit: Optional[Iterable[int]] = None
    else:
        explicit = iter(list(order))
    remaining = {v: set(g.neighbors(v)) for v in g.vertices}
    n_left = g.n_edges
    weights: dict[Edge, Fraction] = {}
    rank: dict[Edge, int] = {}
    bushes = []
    k = 0
    while n_left:
        live = [v for v in g.vertices if remaining[v]]
        if explicit is None:
            u = live[rng.randrange(len(live))]
        else:
            u = next((v for v in explicit if remaining.get(v)), None)
            if u is None:
                u = live[0]
        w = 1 - k * eps
        leaves = tuple(sorted(remaining[u]))
        for x in leaves:
            e = edge(u, x)
            weights[e] = w
            rank[e] = k
            remaining[x].discard(u)
        remaining[u] = set()
        n_left -= len(leaves)
        bushes.append(Bush(u, leaves, w))
        k += 1
    graph = WeightedGraph(g.n_vertices, weights, g.labels)
    return BushDecompositionResult(BushGraph(graph, tuple(bushes)), rank, eps)
