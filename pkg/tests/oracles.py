"""Independent brute-force oracles.

None of these share code with the search engine in the package: they walk
every pick order or every subset directly, without memoization, so they are
only usable on tiny inputs.
"""

from fractions import Fraction
from itertools import combinations, product


def _w(g, e):
    return g.weight(*e)


def naive_greedy_matchings(g):
    """All matchings reachable by some pick order of the greedy procedure."""
    results = set()

    def dfs(alive, chosen):
        if not alive:
            results.add(frozenset(chosen))
            return
        top = max(_w(g, e) for e in alive)
        for e in sorted(alive):
            if _w(g, e) != top:
                continue
            rest = frozenset(f for f in alive if not set(f) & set(e))
            dfs(rest, chosen + [e])

    dfs(frozenset(g.edges), [])
    return results


def naive_opt(g):
    ms = naive_greedy_matchings(g)
    return max(sum((_w(g, e) for e in m), Fraction(0)) for m in ms)


def all_matchings(g):
    edges = list(g.edges)
    out = []
    for r in range(len(edges) + 1):
        for sub in combinations(edges, r):
            verts = [v for e in sub for v in e]
            if len(verts) == len(set(verts)):
                out.append(frozenset(sub))
    return out


def brute_max_weight(g):
    return max(sum((_w(g, e) for e in m), Fraction(0)) for m in all_matchings(g))


def brute_max_cardinality(g):
    return max(len(m) for m in all_matchings(g))


def brute_max_sat(n_vars, clauses):
    best = 0
    for bits in product((False, True), repeat=n_vars):
        k = sum(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses)
        best = max(best, k)
    return best


def naive_mrg_distribution(g, redraw=False):
    """Distribution of MRG outputs by plain recursion over vertex and neighbour picks.

    With ``redraw`` the vertex is drawn among all unmatched vertices and a
    draw with no free neighbour is repeated; the repeat is resolved by
    conditioning, which is what an unbounded redraw loop converges to.
    """
    def rec(unmatched, alive):
        if not alive:
            return {frozenset(): Fraction(1)}
        adj = {}
        for u, v in alive:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        pool = sorted(unmatched) if redraw else sorted(adj)
        live_mass = Fraction(sum(1 for v in pool if v in adj), len(pool))
        out = {}
        for v in pool:
            if v not in adj:
                continue
            for u in adj[v]:
                p = Fraction(1, len(pool)) / live_mass * Fraction(1, len(adj[v]))
                e = (min(u, v), max(u, v))
                rest = frozenset(f for f in alive if u not in f and v not in f)
                for m, q in rec(unmatched - {u, v}, rest).items():
                    out[m | {e}] = out.get(m | {e}, 0) + p * q
        return out

    return rec(frozenset(g.vertices), frozenset(g.edges))


def naive_rgma_expectation(bushes):
    """Expected RGMA weight; ``bushes`` is a list of (center, leaves, weight), heaviest first."""
    def rec(i, used):
        if i == len(bushes):
            return Fraction(0)
        c, leaves, w = bushes[i]
        alive = [x for x in leaves if x not in used] if c not in used else []
        if not alive:
            return rec(i + 1, used)
        return sum((Fraction(1, len(alive)) * (w + rec(i + 1, used | {c, x})) for x in alive), Fraction(0))

    return rec(0, frozenset())
