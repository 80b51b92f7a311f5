"""Residual-graph primitives for exhaustive greedy search.

A run of the greedy procedure is fully described, class by class, by the
maximal matching it picks inside the heaviest weight class of the current
residual graph: every maximal matching of that class subgraph is reachable
by some pick order, and after it is picked the whole class is exhausted.
The residual graph is then the induced subgraph on the still-unmatched
vertices. States are frozensets of edge indices, which doubles as the
canonical memo key.

Weights are rescaled to integers by the lcm of their denominators so the
hot loops avoid Fraction arithmetic; callers convert back with ``scale``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

from .graph import WeightedGraph


class ResidualEngine:
    def __init__(self, g: WeightedGraph):
        self.graph = g
        self.ends = list(g.edges)
        weights = [w for _, _, w in g.weighted_edges()]
        self.scale = math.lcm(*(w.denominator for w in weights)) if weights else 1
        self.iw = [int(w * self.scale) for w in weights]
        incident = [[] for _ in range(g.n_vertices)]
        for i, (u, v) in enumerate(self.ends):
            incident[u].append(i)
            incident[v].append(i)
        self.incident = [frozenset(x) for x in incident]
        self.full = frozenset(range(len(self.ends)))
        self._maximal_memo: dict[frozenset, list] = {}
        self._choice_memo: dict[frozenset, tuple] = {}
        # optional hook called once per node of the maximal-matching
        # enumeration, so a search budget also bounds this inner work
        self.on_step = None

    def to_weight(self, value: int) -> Fraction:
        return Fraction(value, self.scale)

    def to_edges(self, idxs) -> frozenset:
        return frozenset(self.ends[i] for i in idxs)

    def vertices_of(self, idxs) -> set:
        return {x for i in idxs for x in self.ends[i]}

    def remove_vertices(self, state: frozenset, verts) -> frozenset:
        return state.difference(*(self.incident[v] for v in verts))

    def components(self, state) -> list[frozenset]:
        """Connected components of the edge set ``state``, ordered by min edge index."""
        parent = {}

        def find(x):
            root = x
            while parent.get(root, root) != root:
                root = parent[root]
            while parent.get(x, x) != root:
                parent[x], x = root, parent[x]
            return root

        for i in state:
            u, v = self.ends[i]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        groups: dict[int, list] = {}
        for i in state:
            groups.setdefault(find(self.ends[i][0]), []).append(i)
        return sorted((frozenset(c) for c in groups.values()), key=min)

    def component_containing(self, state: frozenset, vertex: int):
        for comp in self.components(state):
            if any(vertex in self.ends[i] for i in comp):
                return comp
        return None

    def top_class(self, state: frozenset):
        w = max(self.iw[i] for i in state)
        return w, frozenset(i for i in state if self.iw[i] == w)

    def maximal_matchings(self, comp: frozenset) -> list[tuple[int, ...]]:
        """All maximal matchings of the edge set ``comp``, as sorted index tuples."""
        cached = self._maximal_memo.get(comp)
        if cached is not None:
            return cached
        found = set()
        ends = self.ends
        step = self.on_step

        def rec(remaining, chosen):
            if step is not None:
                step()
            if not remaining:
                found.add(tuple(sorted(chosen)))
                return
            first = min(remaining)
            a, b = ends[first]
            for f in sorted(remaining):
                x, y = ends[f]
                if x in (a, b) or y in (a, b):
                    rest = frozenset(
                        i for i in remaining if not ({x, y} & set(ends[i]))
                    )
                    rec(rest, chosen + (f,))

        rec(comp, ())
        result = sorted(found, key=lambda t: (-len(t), t))
        self._maximal_memo[comp] = result
        return result

    def class_choices(self, state: frozenset):
        """Top weight of ``state`` and every way greedy can exhaust that class.

        Choices are combined per connected component of the class subgraph
        (cartesian product); the order in which components are processed
        never matters.
        """
        cached = self._choice_memo.get(state)
        if cached is not None:
            return cached
        w, cls = self.top_class(state)
        per_comp = [self.maximal_matchings(c) for c in self.components(cls)]
        choices = [tuple(sorted(i for part in combo for i in part)) for combo in product(*per_comp)]
        choices.sort(key=lambda t: (-len(t), t))
        result = (w, choices)
        self._choice_memo[state] = result
        return result

    def upper_bound(self, state: frozenset) -> int:
        """Admissible cap on any greedy matching weight within ``state``.

        Greedy edges of weight w form a matching of the weight-w subgraph, so
        each class contributes at most w times min(|E_w|, |V_w| // 2).
        """
        per_class: dict[int, list] = {}
        for i in state:
            per_class.setdefault(self.iw[i], []).append(i)
        total = 0
        for w, idxs in per_class.items():
            nv = len(self.vertices_of(idxs))
            total += w * min(len(idxs), nv // 2)
        return total
