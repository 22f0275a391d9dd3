"""Text formats: edge lists, signed edge lists and labeling maps.

Graph files hold one edge ``u v`` per line, signed graph files one
``u v s`` with ``s`` in ``+``/``-``. Blank lines and lines starting with
``#`` are skipped; the vertex count is one more than the largest id.
Labeling files are JSON objects such as ``{"0":[0,2],"1":[1]}``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import GraphFormatError
from .graphs import Graph
from .labeling import Labeling
from .signing import NEGATIVE, POSITIVE, SignedGraph


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line.split()


def _vertex(token: str, lineno: int) -> int:
    if not token.isdigit():
        raise GraphFormatError(f"line {lineno}: vertex id {token!r} is not a non-negative integer")
    return int(token)


def _build(pairs, lineno_of) -> Graph:
    seen = set()
    for (u, v), lineno in zip(pairs, lineno_of):
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"line {lineno}: parallel edge {u} {v}")
        seen.add(key)
    if not pairs:
        raise GraphFormatError("graph has no edges")
    return Graph.from_edges(pairs)


def parse_graph(text: str) -> Graph:
    pairs, where = [], []
    for lineno, tok in _lines(text):
        if len(tok) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {' '.join(tok)!r}")
        pairs.append((_vertex(tok[0], lineno), _vertex(tok[1], lineno)))
        where.append(lineno)
    return _build(pairs, where)


def parse_signed_graph(text: str) -> SignedGraph:
    triples, where = [], []
    for lineno, tok in _lines(text):
        if len(tok) != 3 or tok[2] not in ("+", "-"):
            raise GraphFormatError(f"line {lineno}: expected 'u v s' with s in +/-, got {' '.join(tok)!r}")
        u, v = _vertex(tok[0], lineno), _vertex(tok[1], lineno)
        triples.append((u, v, POSITIVE if tok[2] == "+" else NEGATIVE))
        where.append(lineno)
    g = _build([(u, v) for u, v, _ in triples], where)
    by_edge = {(min(u, v), max(u, v)): s for u, v, s in triples}
    return SignedGraph(g, tuple(by_edge[e] for e in g.edges))


def parse_labeling(text: str, n: int | None = None) -> Labeling:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"labeling is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise GraphFormatError("labeling must be a JSON object mapping vertex ids to integer arrays")
    for key, value in data.items():
        if not isinstance(value, list):
            raise GraphFormatError(f"label of vertex {key} must be an array")
    return Labeling.from_mapping(data, n)


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text())


def read_signed_graph(path) -> SignedGraph:
    return parse_signed_graph(Path(path).read_text())


def read_labeling(path, n: int | None = None) -> Labeling:
    return parse_labeling(Path(path).read_text(), n)
