"""Polynomial-time greedy optimum for graphs whose consecutive weight ratios are all >= 2.

Start from a maximum weight matching and repeatedly repair the heaviest
"problematic" edge: an unmatched edge that is heavier than every matched
edge touching it. With ratios >= 2 and a maximum weight matching, such an
edge always has two matched neighbours whose weights sum exactly to its own,
so swapping them out keeps the weight and the result is greedy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, PreconditionError
from .exact import SolveResult, max_weight_matching
from .graph import Edge, WeightedGraph, check_matching, lambda0, matching_weight


@dataclass(frozen=True)
class RepairStep:
    problematic_edge: Edge
    replaced_edges: frozenset
    weight_delta: Fraction


@dataclass(frozen=True)
class PolyResult(SolveResult):
    repairs: tuple = ()
    initial_matching: frozenset = frozenset()
    # heaviest problematic weight remaining after each repair (None when clear)
    problematic_peaks: tuple = ()


def _mate_edges(m) -> dict[int, Edge]:
    return {v: e for e in m for v in e}


def find_problematic_edges(g: WeightedGraph, m) -> set:
    """Unmatched edges heavier than every matched edge incident to them.

    A free endpoint counts as "no heavier matched edge". A maximal matching
    with no problematic edge is exactly a greedy matching.
    """
    m = check_matching(g, m)
    mate = _mate_edges(m)
    out = set()
    for u, v, w in g.weighted_edges():
        if (u, v) in m:
            continue
        if all(g.weight(*mate[x]) < w for x in (u, v) if x in mate):
            out.add((u, v))
    return out


def solve_lambda0_ge2(g: WeightedGraph, start=None) -> PolyResult:
    """Greedy matching of maximum weight, for graphs with lambda0 >= 2.

    Repairs begin from ``start`` if given (it must be a maximum weight
    matching), otherwise from the blossom matching.
    """
    ratio = lambda0(g)
    if ratio < 2:
        ws = g.distinct_weights()
        a, b = min(zip(ws, ws[1:]), key=lambda p: p[0] / p[1])
        raise PreconditionError(f"lambda0 = {ratio} < 2 (consecutive weights {a} and {b})")
    best = max_weight_matching(g)
    if start is None:
        start = best
    else:
        start = check_matching(g, start)
        if matching_weight(g, start) != matching_weight(g, best):
            raise InputError("start is not a maximum weight matching")
    m = set(start)
    repairs = []
    peaks = []
    while True:
        bad = find_problematic_edges(g, m)
        if not bad:
            break
        e = min(bad, key=lambda x: (-g.weight(*x), x))
        mate = _mate_edges(m)
        replaced = frozenset(mate[x] for x in e if x in mate)
        # a free endpoint would let e raise the weight of a maximum matching
        assert len(replaced) == 2, f"problematic edge {e} has a free endpoint"
        delta = g.weight(*e) - sum(g.weight(*f) for f in replaced)
        assert delta == 0, f"repair at {e} changes the weight by {delta}"
        m -= replaced
        m.add(e)
        repairs.append(RepairStep(e, replaced, delta))
        remaining = find_problematic_edges(g, m)
        peaks.append(max((g.weight(*x) for x in remaining), default=None))
    assert len(repairs) <= len(start) // 2
    result = frozenset(m)
    return PolyResult(
        opt_weight=matching_weight(g, result),
        witness=result,
        explored_states=len(repairs),
        repairs=tuple(repairs),
        initial_matching=start,
        problematic_peaks=tuple(peaks),
    )
