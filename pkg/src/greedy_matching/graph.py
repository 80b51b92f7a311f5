"""Exact-weight undirected graphs, matchings, and structural parameters.

Vertices are dense integer ids ``0 .. n-1``. Edges are stored as ordered
pairs ``(u, v)`` with ``u < v`` and carry a positive :class:`~fractions.Fraction`
weight. Floating point weights are rejected: weight classes are formed by
exact equality.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Optional, Union

from .errors import InputError

Edge = tuple[int, int]
Matching = frozenset  # frozenset[Edge]
WeightLike = Union[int, Fraction, str]


def edge(u: int, v: int) -> Edge:
    """Canonical form of the undirected edge ``{u, v}``."""
    if u == v:
        raise InputError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


def as_weight(value: WeightLike) -> Fraction:
    """Convert ``value`` to an exact positive rational weight."""
    if isinstance(value, bool):
        raise InputError(f"invalid weight {value!r}")
    if isinstance(value, Fraction):
        w = value
    elif isinstance(value, (int, Rational)):
        w = Fraction(value)
    elif isinstance(value, str):
        try:
            w = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"invalid weight {value!r}") from exc
        if "." in value or "e" in value.lower():
            raise InputError(f"weight {value!r} must be written as p/q")
    else:
        raise InputError(f"weight {value!r} is not an exact rational")
    if w <= 0:
        raise InputError(f"edge weights must be positive, got {w}")
    return w


class WeightedGraph:
    """Immutable undirected graph with exact positive edge weights.

    Parameters
    ----------
    n_vertices : int
        Vertex ids are ``range(n_vertices)``.
    edges : iterable of ``(u, v, weight)`` or mapping ``{(u, v): weight}``
    labels : mapping vertex -> str, optional
        Free-form annotations (e.g. reduction roles); they take part in
        equality so that file round trips are checked completely.
    """

    __slots__ = ("_n", "_w", "_labels", "_adj", "_hash")

    def __init__(
        self,
        n_vertices: int,
        edges: Union[Iterable[tuple[int, int, WeightLike]], Mapping[Edge, WeightLike]] = (),
        labels: Optional[Mapping[int, str]] = None,
    ):
        if isinstance(n_vertices, bool) or not isinstance(n_vertices, int) or n_vertices < 0:
            raise InputError(f"invalid vertex count {n_vertices!r}")
        self._n = n_vertices
        items = edges.items() if isinstance(edges, Mapping) else edges
        weights: dict[Edge, Fraction] = {}
        for item in items:
            if isinstance(edges, Mapping):
                (u, v), w = item
            else:
                u, v, w = item
            self._check_vertex(u)
            self._check_vertex(v)
            e = edge(u, v)
            if e in weights:
                raise InputError(f"parallel edge {e}")
            weights[e] = as_weight(w)
        self._w = dict(sorted(weights.items()))
        adj: list[list[int]] = [[] for _ in range(n_vertices)]
        for u, v in self._w:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._labels = {}
        for v, text in (labels or {}).items():
            self._check_vertex(v)
            if "\n" in str(text):
                raise InputError("labels must be single-line")
            self._labels[v] = str(text)
        self._labels = dict(sorted(self._labels.items()))
        self._hash = None

    def _check_vertex(self, v) -> None:
        if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < self._n:
            raise InputError(f"vertex {v!r} not in 0..{self._n - 1}")

    # -- basic accessors -------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return self._n

    @property
    def vertices(self) -> range:
        return range(self._n)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self._w)

    @property
    def n_edges(self) -> int:
        return len(self._w)

    @property
    def labels(self) -> dict[int, str]:
        return dict(self._labels)

    def label(self, v: int) -> Optional[str]:
        return self._labels.get(v)

    def weight(self, u: int, v: int) -> Fraction:
        try:
            return self._w[edge(u, v)]
        except KeyError:
            raise InputError(f"no edge ({u}, {v})") from None

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and edge(u, v) in self._w

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def weighted_edges(self) -> Iterable[tuple[int, int, Fraction]]:
        for (u, v), w in self._w.items():
            yield u, v, w

    def weight_map(self) -> dict[Edge, Fraction]:
        return dict(self._w)

    def distinct_weights(self) -> list[Fraction]:
        """Distinct edge weights in strictly decreasing order."""
        return sorted(set(self._w.values()), reverse=True)

    # -- derived graphs --------------------------------------------------

    def remove_vertices(self, removed: Iterable[int]) -> "WeightedGraph":
        """``G - V'``: drop every edge touching ``removed`` (ids are kept)."""
        gone = set(removed)
        return WeightedGraph(
            self._n,
            {e: w for e, w in self._w.items() if e[0] not in gone and e[1] not in gone},
            self._labels,
        )

    def add_vertex(self, neighbors: Mapping[int, WeightLike], label: Optional[str] = None):
        """``G + u``: return ``(graph, u)`` with a new vertex joined to ``neighbors``."""
        u = self._n
        w = dict(self._w)
        for v, wt in neighbors.items():
            w[edge(u, v)] = wt
        labels = dict(self._labels)
        if label is not None:
            labels[u] = label
        return WeightedGraph(self._n + 1, w, labels), u

    def with_weights(self, weights: Mapping[Edge, WeightLike]) -> "WeightedGraph":
        return WeightedGraph(self._n, weights, self._labels)

    def scaled(self, factor: WeightLike) -> "WeightedGraph":
        c = as_weight(factor)
        return WeightedGraph(self._n, {e: w * c for e, w in self._w.items()}, self._labels)

    def unweighted(self) -> "WeightedGraph":
        """Same edges with every weight set to 1."""
        return WeightedGraph(self._n, {e: 1 for e in self._w}, self._labels)

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self._n))
        for (u, v), w in self._w.items():
            g.add_edge(u, v, weight=w)
        return g

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self._n == other._n and self._w == other._w and self._labels == other._labels

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, tuple(self._w.items()), tuple(self._labels.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"WeightedGraph(n_vertices={self._n}, n_edges={len(self._w)})"


def unit_graph(n_vertices: int, edges: Iterable[Edge]) -> WeightedGraph:
    """Unweighted graph: every edge gets weight 1."""
    return WeightedGraph(n_vertices, [(u, v, 1) for u, v in edges])


def is_unweighted(g: WeightedGraph) -> bool:
    return all(w == 1 for _, _, w in g.weighted_edges())


# -- matchings -------------------------------------------------------------


def check_matching(g: WeightedGraph, m: Iterable[Iterable[int]]) -> frozenset:
    """Validate ``m`` against ``g`` and return it as a frozenset of canonical edges."""
    result = set()
    covered = set()
    for pair in m:
        u, v = pair
        e = edge(u, v)
        if not g.has_edge(*e):
            raise InputError(f"matching edge {e} is not an edge of the graph")
        if e in result:
            continue
        if u in covered or v in covered:
            raise InputError(f"edge {e} shares an endpoint with another matching edge")
        covered.update(e)
        result.add(e)
    return frozenset(result)


def matched_vertices(m: Iterable[Edge]) -> set[int]:
    return {v for e in m for v in e}


def matching_weight(g: WeightedGraph, m: Iterable[Edge]) -> Fraction:
    """Exact total weight of the matching ``m``."""
    m = check_matching(g, m)
    return sum((g.weight(u, v) for u, v in m), Fraction(0))


def is_maximal_matching(g: WeightedGraph, m: Iterable[Edge]) -> bool:
    """True iff no edge of ``g`` has both endpoints unmatched."""
    covered = matched_vertices(check_matching(g, m))
    return all(u in covered or v in covered for u, v in g.edges)


# -- structural parameters -------------------------------------------------


def weight_classes(g: WeightedGraph) -> list[tuple[Fraction, frozenset]]:
    """Edges grouped by weight, heaviest class first."""
    groups: dict[Fraction, set] = {}
    for u, v, w in g.weighted_edges():
        groups.setdefault(w, set()).add((u, v))
    return [(w, frozenset(groups[w])) for w in sorted(groups, reverse=True)]


def lambda0(g: WeightedGraph):
    """Minimum ratio of consecutive distinct weights; ``math.inf`` for < 2 classes."""
    ws = g.distinct_weights()
    if len(ws) < 2:
        return math.inf
    return min(a / b for a, b in zip(ws, ws[1:]))


def _components(edges: Iterable[Edge]) -> list[list[Edge]]:
    parent: dict[int, int] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = list(edges)
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    comps: dict[int, list[Edge]] = {}
    for e in edges:
        comps.setdefault(find(e[0]), []).append(e)
    return list(comps.values())


def mu(g: WeightedGraph) -> int:
    """Largest edge count of a connected component of any single weight class."""
    if g.n_edges == 0:
        raise InputError("mu is undefined on an edgeless graph")
    return max(len(c) for _, es in weight_classes(g) for c in _components(es))


@dataclass(frozen=True)
class GraphParams:
    lambda0: object
    mu: int
    n_weight_classes: int


def graph_params(g: WeightedGraph) -> GraphParams:
    return GraphParams(lambda0(g), mu(g) if g.n_edges else 0, len(g.distinct_weights()))


@dataclass(frozen=True)
class Bipartiteness:
    """Result of :func:`is_bipartite`; truthy iff the graph is bipartite."""

    bipartite: bool
    coloring: Optional[dict] = None
    odd_cycle: Optional[list] = None

    def __bool__(self) -> bool:
        return self.bipartite


def is_bipartite(g: WeightedGraph) -> Bipartiteness:
    """2-color ``g`` by BFS, or return an odd cycle as a vertex list."""
    color: dict[int, int] = {}
    parent: dict[int, Optional[int]] = {}
    for root in g.vertices:
        if root in color:
            continue
        color[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            a = queue.popleft()
            for b in g.neighbors(a):
                if b not in color:
                    color[b] = 1 - color[a]
                    parent[b] = a
                    queue.append(b)
                elif color[b] == color[a]:
                    return Bipartiteness(False, odd_cycle=_odd_cycle(parent, a, b))
    return Bipartiteness(True, coloring=color)


def _odd_cycle(parent, a, b) -> list[int]:
    def path_to_root(x):
        out = []
        while x is not None:
            out.append(x)
            x = parent[x]
        return out

    pa, pb = path_to_root(a), path_to_root(b)
    in_pb = set(pb)
    lca = next(x for x in pa if x in in_pb)
    left = pa[: pa.index(lca) + 1]
    right = pb[: pb.index(lca)]
    return left + right[::-1]
