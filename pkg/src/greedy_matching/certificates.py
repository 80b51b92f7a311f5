"""Converting between truth assignments and greedy matchings of a reduction graph.

Each gadget ends up in one of four internal states, named after which
literal the free terminal can serve:

    n   r-alpha, gamma-y, p-q, z-s        beta free
    nn  r-alpha, y-z, p-q, s-t            beta and gamma free
    p   q-r, gamma-y, z-s, beta-p         alpha free
    b   q-r, alpha-gamma, y-z, beta-p, s-t

``n`` has the base weight; ``nn`` and ``p`` are lighter by exactly the
weight of the connector they free, so every matched clause vertex is worth
one unit over the base.
"""

from __future__ import annotations

from .cnf import satisfied_clauses
from .errors import InputError
from .graph import check_matching, edge, matching_weight
from .greedy import PriorityTieBreak, is_greedy, run_greedy
from .reductions import ReductionOutput

STATES = {
    "n": (("r", "alpha"), ("gamma", "y"), ("p", "q"), ("z", "s")),
    "nn": (("r", "alpha"), ("y", "z"), ("p", "q"), ("s", "t")),
    "p": (("q", "r"), ("gamma", "y"), ("z", "s"), ("beta", "p")),
    "b": (("q", "r"), ("alpha", "gamma"), ("y", "z"), ("beta", "p"), ("s", "t")),
}
_HEAVY = (("q", "r"), ("r", "alpha"), ("alpha", "gamma"), ("gamma", "y"), ("y", "z"))
_HEAVY_PATTERN = {
    frozenset({("r", "alpha"), ("gamma", "y")}): "n",
    frozenset({("q", "r"), ("gamma", "y")}): "p",
    frozenset({("r", "alpha"), ("y", "z")}): "nn",
    frozenset({("q", "r"), ("alpha", "gamma"), ("y", "z")}): "b",
}
SUPPORTED = ("main", "mu2", "bipartite")
TERMINAL_PREFERENCE = ("alpha", "beta", "gamma")


def _check_variant(r: ReductionOutput):
    if r.variant not in SUPPORTED:
        raise InputError(f"certificates are defined for variants {SUPPORTED}, not {r.variant!r}")


def _gadget_edges(r: ReductionOutput, i: int, state: str):
    g = r.gadgets[i - 1]
    return [edge(g[a], g[b]) for a, b in STATES[state]]


def assignment_to_matching(r: ReductionOutput, tau) -> frozenset:
    """Greedy matching worth at least ``base * n + (clauses satisfied by tau)``.

    All gadgets start in state ``n``. Each clause, in order, is served by its
    first true literal found in the order alpha, beta, gamma: a true alpha
    literal moves that gadget to ``p``, a true gamma literal to ``nn``. The
    chosen edges are then completed by a greedy run that prefers them.
    """
    _check_variant(r)
    missing = [v for v in range(1, r.n + 1) if v not in tau]
    if missing:
        raise InputError(f"assignment leaves variables {missing} unset")
    state = ["n"] * (r.n + 1)
    served = []
    for j, row in enumerate(r.attachments):
        true_terminals = {}
        for v, t in row:
            if tau[v] == (t == "alpha"):
                true_terminals.setdefault(t, v)
        for terminal in TERMINAL_PREFERENCE:
            if terminal in true_terminals:
                v = true_terminals[terminal]
                if terminal == "alpha":
                    state[v] = "p"
                elif terminal == "gamma":
                    state[v] = "nn"
                served.append(edge(r.clause_vertices[j], r.gadget_vertex(v, terminal)))
                break
    partial = [e for i in range(1, r.n + 1) for e in _gadget_edges(r, i, state[i])] + served
    check_matching(r.graph, partial)
    m = run_greedy(r.graph, PriorityTieBreak(partial)).matching
    assert set(partial) <= m, "greedy completion dropped a planned edge"
    assert is_greedy(r.graph, m)
    k = satisfied_clauses(r.formula, tau)
    assert matching_weight(r.graph, m) >= r.base_weight * r.n + k
    return m


def gadget_state(r: ReductionOutput, m, i: int) -> str:
    g = r.gadgets[i - 1]
    heavy = frozenset((a, b) for a, b in _HEAVY if edge(g[a], g[b]) in m)
    state = _HEAVY_PATTERN.get(heavy)
    assert state is not None, f"gadget {i} has heavy edges {sorted(heavy)}, not a greedy state"
    return state


def normalize_gadgets(r: ReductionOutput, m) -> frozenset:
    """Replace each clause-beta edge by beta-p when p is free; both weigh the same.

    Only the main and bipartite layouts give these edges equal weight; in the
    other layouts a greedy matching never leaves p and beta both free of the
    gadget, so nothing changes.
    """
    m = set(m)
    clause_set = set(r.clause_vertices)
    for i in range(1, r.n + 1):
        beta, p = r.gadget_vertex(i, "beta"), r.gadget_vertex(i, "p")
        hit = [e for e in m if beta in e and (set(e) - {beta}) <= clause_set]
        if not hit or any(p in e for e in m):
            continue
        old, new = hit[0], edge(beta, p)
        assert r.graph.weight(*old) == r.graph.weight(*new), "beta rewrite changes the weight"
        m.remove(old)
        m.add(new)
    return frozenset(m)


def matching_to_assignment(r: ReductionOutput, m, default: bool = False) -> dict:
    """Truth assignment satisfying at least ``w(m) - base * n`` clauses.

    Gadgets in state ``p`` make their variable true, ``n`` and ``nn`` make
    it false, and ``b`` leaves ``default``.
    """
    _check_variant(r)
    m = check_matching(r.graph, m)
    if not is_greedy(r.graph, m):
        raise InputError("matching is not greedy")
    weight = matching_weight(r.graph, m)
    m = normalize_gadgets(r, m)
    clause_set = set(r.clause_vertices)
    tau = {}
    for i in range(1, r.n + 1):
        state = gadget_state(r, m, i)
        g = r.gadgets[i - 1]
        to_clause = {
            t for t in ("alpha", "gamma") if any(g[t] in e and (set(e) - {g[t]}) <= clause_set for e in m)
        }
        assert len(to_clause) < 2, f"gadget {i}: alpha and gamma both matched to clause vertices"
        tau[i] = {"p": True, "n": False, "nn": False}.get(state, default)
    assert satisfied_clauses(r.formula, tau) >= weight - r.base_weight * r.n
    return tau


__all__ = [
    "assignment_to_matching",
    "matching_to_assignment",
    "normalize_gadgets",
    "gadget_state",
    "STATES",
]
