"""MRG: random vertex, then random unmatched neighbour, for maximum cardinality matching."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bush import bush_decompose, rgma
from .errors import BudgetExceededError, InputError
from .exact import max_cardinality_matching
from .graph import WeightedGraph, edge
from .greedy import check_random_state
from .seeding import derive_rng


def mrg(g: WeightedGraph, seed=None, dead_picks: str = "skip") -> frozenset:
    """One MRG run on the unweighted structure of ``g``.

    ``dead_picks="skip"`` draws the vertex uniformly among vertices that still
    have an unmatched neighbour. ``"redraw"`` draws among all unmatched
    vertices and simply draws again when the pick has no free neighbour;
    both give the same distribution over matchings.
    """
    if dead_picks not in ("skip", "redraw"):
        raise InputError(f"unknown dead_picks mode {dead_picks!r}")
    rng = check_random_state(seed)
    adj = {v: set(g.neighbors(v)) for v in g.vertices if g.neighbors(v)}
    unmatched = list(g.vertices)
    matching = set()
    n_edges = g.n_edges
    while n_edges:
        if dead_picks == "skip":
            live = [v for v in sorted(adj) if adj[v]]
            v = live[rng.randrange(len(live))]
        else:
            v = unmatched[rng.randrange(len(unmatched))]
            if not adj.get(v):
                continue
        nbrs = sorted(adj[v])
        u = nbrs[rng.randrange(len(nbrs))]
        matching.add(edge(u, v))
        for x in (u, v):
            for y in adj.pop(x, ()):
                if y in adj:
                    adj[y].discard(x)
                    n_edges -= 1
        unmatched.remove(u)
        unmatched.remove(v)
    return frozenset(matching)


def _live_structure(state):
    adj: dict[int, list] = {}
    for u, v in state:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    return adj


def _drop(state, u, v):
    return frozenset(e for e in state if u not in e and v not in e)


def mrg_matching_distribution(g: WeightedGraph, budget: Optional[int] = 1_000_000) -> dict:
    """Exact probability of every matching MRG can return."""
    memo: dict[frozenset, dict] = {}

    def dist(state):
        if not state:
            return {frozenset(): Fraction(1)}
        if state in memo:
            return memo[state]
        if budget is not None and len(memo) >= budget:
            raise BudgetExceededError(f"MRG distribution exceeded {budget} states", explored=len(memo))
        adj = _live_structure(state)
        out: dict[frozenset, Fraction] = {}
        for v, nbrs in adj.items():
            for u in nbrs:
                p = Fraction(1, len(adj) * len(nbrs))
                e = edge(u, v)
                for m, q in dist(_drop(state, u, v)).items():
                    key = m | {e}
                    out[key] = out.get(key, 0) + p * q
        memo[state] = out
        return out

    return dist(frozenset(g.edges))


def mrg_expected_cardinality_exact(g: WeightedGraph, budget: Optional[int] = 1_000_000) -> Fraction:
    """Exact expected size of the MRG matching (memoized on the residual edge set)."""
    memo: dict[frozenset, Fraction] = {}

    def expect(state):
        if not state:
            return Fraction(0)
        if state in memo:
            return memo[state]
        if budget is not None and len(memo) >= budget:
            raise BudgetExceededError(f"MRG expectation exceeded {budget} states", explored=len(memo))
        adj = _live_structure(state)
        branches: dict[frozenset, Fraction] = {}
        for v, nbrs in adj.items():
            for u in nbrs:
                nxt = _drop(state, u, v)
                branches[nxt] = branches.get(nxt, 0) + Fraction(1, len(adj) * len(nbrs))
        value = 1 + sum(p * expect(nxt) for nxt, p in branches.items())
        memo[state] = value
        return value

    return expect(frozenset(g.edges))


@dataclass(frozen=True)
class ComparisonReport:
    trials: int
    max_cardinality: int
    mrg_mean_ratio: Optional[Fraction]
    mrg_stderr: Optional[float]
    rgma_mean_ratio: Optional[Fraction]
    rgma_stderr: Optional[float]
    mrg_sizes: tuple = ()
    rgma_sizes: tuple = ()

    @property
    def defined(self) -> bool:
        return self.trials > 0 and self.max_cardinality > 0


def mean_and_stderr(values) -> tuple[Optional[Fraction], Optional[float]]:
    """Exact mean and (sample) standard error of the mean."""
    values = [Fraction(v) for v in values]
    n = len(values)
    if n == 0:
        return None, None
    mean = sum(values, Fraction(0)) / n
    if n == 1:
        return mean, 0.0
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, math.sqrt(var / n)


def compare_rgma_mrg(g: WeightedGraph, trials: int, seed: int = 0) -> ComparisonReport:
    """Run MRG and RGMA-on-a-fresh-Bush-Decomposition ``trials`` times each.

    Trial ``t`` draws from streams derived from ``(seed, t)``, so results do
    not depend on execution order.
    """
    nu = len(max_cardinality_matching(g))
    if trials <= 0 or nu == 0:
        return ComparisonReport(max(trials, 0), nu, None, None, None, None)
    mrg_sizes, rgma_sizes = [], []
    for t in range(trials):
        mrg_sizes.append(len(mrg(g, derive_rng(seed, t, "mrg"))))
        rng = derive_rng(seed, t, "rgma")
        dec = bush_decompose(g, "random", rng)
        rgma_sizes.append(len(rgma(dec.bush_graph, rng)))
    m_mean, m_se = mean_and_stderr(Fraction(s, nu) for s in mrg_sizes)
    r_mean, r_se = mean_and_stderr(Fraction(s, nu) for s in rgma_sizes)
    return ComparisonReport(trials, nu, m_mean, m_se, r_mean, r_se, tuple(mrg_sizes), tuple(rgma_sizes))
