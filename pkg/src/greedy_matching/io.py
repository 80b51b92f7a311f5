"""Line-based text formats for graphs, matchings and assignments.

Graph files::

    graph <numVertices>
    <u> <v> <num>[/<den>]
    label <v> <text>

Blank lines and lines starting with ``#`` are ignored. :func:`format_graph`
emits a canonical form (edges sorted, weights in lowest terms) so that
``format_graph(parse_graph(text)) == text`` for canonical input.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Iterable, Union

from .errors import InputError, ParseError
from .graph import Edge, WeightedGraph, as_weight, edge

PathLike = Union[str, Path]


def format_weight(w: Fraction) -> str:
    return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def parse_graph(text: str) -> WeightedGraph:
    n = None
    edges = []
    labels = {}
    for lineno, line in _content_lines(text):
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "graph":
                raise ParseError("expected header 'graph <numVertices>'", lineno)
            n = _parse_int(parts[1], lineno)
            continue
        if parts[0] == "label":
            pieces = line.split(None, 2)
            if len(pieces) < 3:
                raise ParseError("expected 'label <v> <text>'", lineno)
            labels[_parse_int(pieces[1], lineno)] = pieces[2]
            continue
        if len(parts) != 3:
            raise ParseError("expected '<u> <v> <weight>'", lineno)
        try:
            w = as_weight(parts[2])
        except InputError as exc:
            raise ParseError(str(exc), lineno) from None
        edges.append((_parse_int(parts[0], lineno), _parse_int(parts[1], lineno), w))
    if n is None:
        raise ParseError("missing 'graph' header")
    try:
        return WeightedGraph(n, edges, labels)
    except ParseError:
        raise
    except InputError as exc:
        raise ParseError(str(exc)) from None


def format_graph(g: WeightedGraph) -> str:
    lines = [f"graph {g.n_vertices}"]
    lines += [f"{u} {v} {format_weight(w)}" for u, v, w in g.weighted_edges()]
    lines += [f"label {v} {text}" for v, text in g.labels.items()]
    return "\n".join(lines) + "\n"


def read_graph(path: PathLike) -> WeightedGraph:
    return parse_graph(Path(path).read_text())


def write_graph(g: WeightedGraph, path: PathLike) -> None:
    Path(path).write_text(format_graph(g))


def parse_edge_list(text: str) -> list[Edge]:
    """Edges in file order, one ``u v`` pair per line."""
    pairs = []
    for lineno, line in _content_lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected '<u> <v>'", lineno)
        u, v = (_parse_int(p, lineno) for p in parts)
        try:
            pairs.append(edge(u, v))
        except InputError as exc:
            raise ParseError(str(exc), lineno) from None
    return pairs


def parse_matching(text: str) -> frozenset:
    return frozenset(parse_edge_list(text))


def format_matching(m: Iterable[Edge]) -> str:
    return "".join(f"{u} {v}\n" for u, v in sorted(m))


def read_matching(path: PathLike) -> frozenset:
    return parse_matching(Path(path).read_text())


def write_matching(m: Iterable[Edge], path: PathLike) -> None:
    Path(path).write_text(format_matching(m))


def parse_assignment(text: str) -> dict[int, bool]:
    """Signed literals, whitespace separated; ``3`` sets x3 true, ``-3`` false."""
    tau = {}
    for lineno, line in _content_lines(text):
        for tok in line.split():
            lit = _parse_int(tok, lineno)
            if lit == 0:
                continue
            if abs(lit) in tau and tau[abs(lit)] != (lit > 0):
                raise ParseError(f"variable {abs(lit)} assigned both ways", lineno)
            tau[abs(lit)] = lit > 0
    return tau


def format_assignment(tau: dict[int, bool]) -> str:
    return " ".join(str(v if tau[v] else -v) for v in sorted(tau)) + " 0\n"


def parse_vertex_order(text: str) -> list[int]:
    return [_parse_int(tok, lineno) for lineno, line in _content_lines(text) for tok in line.split()]


def _parse_int(token: str, lineno) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", lineno) from None
