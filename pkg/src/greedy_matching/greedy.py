"""The greedy matching procedure, its verifier, and exhaustive enumeration."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Optional, Sequence, Union

from ._residual import ResidualEngine
from .errors import InputError, LimitExceededError
from .graph import Edge, WeightedGraph, check_matching, edge, is_maximal_matching


def check_random_state(seed) -> random.Random:
    """Turn ``None``, an int, or a ``random.Random`` into a ``random.Random``."""
    if isinstance(seed, random.Random):
        return seed
    if seed is None or (isinstance(seed, int) and not isinstance(seed, bool)):
        return random.Random(seed)
    raise InputError(f"cannot use {seed!r} as a random state")


# -- tie-breaking rules --------------------------------------------------------
#
# A tie-breaker is called as ``tb(candidates, rng, alive)`` where
# ``candidates`` is the sorted list of available edges of the current
# heaviest weight and ``alive`` the set of all surviving edges. It must
# return one of the candidates.


class RandomTieBreak:
    """Uniformly random candidate, drawn from the run's seeded stream."""

    name = "random"

    def __call__(self, candidates, rng, alive):
        return candidates[rng.randrange(len(candidates))]


class LexTieBreak:
    name = "lex"

    def __call__(self, candidates, rng, alive):
        return candidates[0]


class PriorityTieBreak:
    """Pick the candidate listed earliest in ``order``; unlisted edges come last, lexicographically."""

    name = "priority"

    def __init__(self, order: Iterable[Sequence[int]]):
        self.rank = {}
        for pos, (u, v) in enumerate(order):
            self.rank.setdefault(edge(u, v), pos)

    def __call__(self, candidates, rng, alive):
        big = len(self.rank)
        return min(candidates, key=lambda e: (self.rank.get(e, big), e))


class CallbackTieBreak:
    """Adapter for an adversarial ``fn(candidates, alive) -> edge``."""

    name = "callback"

    def __init__(self, fn: Callable):
        self.fn = fn

    def __call__(self, candidates, rng, alive):
        return self.fn(candidates, alive)


TieBreaker = Union[RandomTieBreak, LexTieBreak, PriorityTieBreak, CallbackTieBreak, Callable]

_NAMED = {"random": RandomTieBreak, "lex": LexTieBreak}


def make_tie_breaker(spec) -> TieBreaker:
    if isinstance(spec, str):
        if spec not in _NAMED:
            raise InputError(f"unknown tie-breaker {spec!r}")
        return _NAMED[spec]()
    if callable(spec):
        return spec
    raise InputError(f"invalid tie-breaker {spec!r}")


# -- running and verifying -----------------------------------------------------


@dataclass(frozen=True)
class TraceStep:
    edge: Edge
    class_index: int
    n_candidates: int


class GreedyRun(NamedTuple):
    matching: frozenset
    trace: tuple


def run_greedy(g: WeightedGraph, tie_breaker="random", seed=None) -> GreedyRun:
    """Run the greedy matching procedure once.

    Weight classes are processed heaviest first; within a class the
    tie-breaker picks among the surviving edges until none is left.
    """
    tb = make_tie_breaker(tie_breaker)
    rng = check_random_state(seed)
    weights = g.weight_map()
    classes = g.distinct_weights()
    buckets = {w: [] for w in classes}
    for e, w in weights.items():
        buckets[w].append(e)
    alive = set(weights)
    matching = set()
    trace = []
    for k, w in enumerate(classes):
        while True:
            candidates = [e for e in buckets[w] if e in alive]
            if not candidates:
                break
            chosen = tb(candidates, rng, frozenset(alive))
            if chosen not in candidates:
                raise InputError(f"tie-breaker returned {chosen!r}, not a candidate")
            matching.add(chosen)
            trace.append(TraceStep(chosen, k, len(candidates)))
            for x in chosen:
                for y in g.neighbors(x):
                    alive.discard(edge(x, y))
    return GreedyRun(frozenset(matching), tuple(trace))


def replay_trace(g: WeightedGraph, trace: Iterable[TraceStep]) -> frozenset:
    """Re-execute a trace, checking every step was a legal greedy pick."""
    steps = list(trace)
    run = run_greedy(g, PriorityTieBreak(s.edge for s in steps))
    if [s.edge for s in run.trace] != [s.edge for s in steps]:
        raise InputError("trace does not describe a greedy run of this graph")
    return run.matching


def is_greedy(g: WeightedGraph, m: Iterable[Edge]) -> bool:
    """Check that ``m`` is a matching some execution of the greedy procedure produces.

    Maximality is checked first. Then, repeatedly: the heaviest edges of the
    remaining matching must carry the heaviest weight of the current graph,
    and their endpoints are deleted. ``m`` is greedy iff the graph runs out
    of edges exactly when ``m`` does.
    """
    m = check_matching(g, m)
    if not is_maximal_matching(g, m):
        return False
    weights = g.weight_map()
    alive = set(weights)
    remaining = sorted(m, key=lambda e: weights[e], reverse=True)
    while alive:
        top = max(weights[e] for e in alive)
        if not remaining or weights[remaining[0]] != top:
            return False
        level = [e for e in remaining if weights[e] == top]
        remaining = remaining[len(level):]
        for x in {v for e in level for v in e}:
            for y in g.neighbors(x):
                alive.discard(edge(x, y))
    return not remaining


# -- enumeration ---------------------------------------------------------------


def enumerate_greedy_matchings(g: WeightedGraph, limit: Optional[int] = 100_000) -> set:
    """Every distinct greedy matching of ``g``, as frozensets of edges.

    Raises :class:`LimitExceededError` once more than ``limit`` distinct
    matchings are certain to exist.
    """
    eng = ResidualEngine(g)
    memo: dict[frozenset, frozenset] = {}

    def check(found):
        if limit is not None and len(found) > limit:
            raise LimitExceededError(
                f"more than {limit} greedy matchings", partial_count=len(found)
            )

    def enum(state):
        if not state:
            return frozenset([frozenset()])
        comps = eng.components(state)
        result = enum_connected(comps[0])
        for comp in comps[1:]:
            other = enum_connected(comp)
            result = frozenset(a | b for a in result for b in other)
            check(result)
        return result

    def enum_connected(state):
        hit = memo.get(state)
        if hit is not None:
            return hit
        _, choices = eng.class_choices(state)
        found = set()
        for choice in choices:
            rest = enum(eng.remove_vertices(state, eng.vertices_of(choice)))
            picked = frozenset(choice)
            found.update(picked | tail for tail in rest)
            check(found)
        result = frozenset(found)
        memo[state] = result
        return result

    return {eng.to_edges(m) for m in enum(eng.full)}
