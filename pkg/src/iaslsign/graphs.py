"""Simple undirected graphs and the small-graph algorithms the theorems need."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cache, cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import CycleBudgetExceeded, GraphFormatError

DEFAULT_CYCLE_BUDGET = 10_000
MAX_CORPUS_N = 7


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices ``0..n-1`` with no isolated vertices.

    ``edges`` is stored as a sorted tuple of ``(u, v)`` pairs with ``u < v``;
    use :meth:`from_edges` to build one from arbitrary pairs.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphFormatError("a graph needs at least one vertex")
        seen = {}
        for i, (u, v) in enumerate(self.edges):
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise GraphFormatError(f"edge {u} {v} is not normalised to 0 <= u < v < n")
            if (u, v) in seen:
                raise GraphFormatError(f"parallel edge {u} {v}")
            seen[(u, v)] = i
        if list(self.edges) != sorted(self.edges):
            raise GraphFormatError("edges must be sorted; use Graph.from_edges")
        covered = {x for e in self.edges for x in e}
        isolated = [x for x in range(self.n) if x not in covered]
        if isolated:
            raise GraphFormatError(f"isolated vertex {isolated[0]}")
        object.__setattr__(self, "_index", seen)

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], n: int | None = None) -> Graph:
        pairs = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            if u < 0 or v < 0:
                raise GraphFormatError(f"negative vertex id in edge {u} {v}")
            pair = (min(u, v), max(u, v))
            if pair in pairs:
                raise GraphFormatError(f"parallel edge {pair[0]} {pair[1]}")
            pairs.add(pair)
        if n is None:
            n = 1 + max((v for _, v in pairs), default=-1)
        return cls(n, tuple(sorted(pairs)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_index(self, u: int, v: int) -> int | None:
        return self._index.get((u, v) if u < v else (v, u))

    def has_edge(self, u: int, v: int) -> bool:
        return self.edge_index(u, v) is not None

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for root in range(self.n):
            if seen[root]:
                continue
            seen[root] = True
            comp, stack = [], [root]
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adjacency[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def to_text(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges)


@dataclass(frozen=True, order=True)
class Cycle:
    """A simple cycle ``v1 v2 ... vr v1`` in canonical rotation/orientation."""

    vertices: tuple[int, ...]

    @classmethod
    def canonical(cls, seq: Sequence[int]) -> Cycle:
        """Rotate ``seq`` so its smallest vertex leads, then pick the
        orientation with the smaller second vertex."""
        seq = list(seq)
        if len(seq) < 3 or len(set(seq)) != len(seq):
            raise ValueError(f"not a simple cycle: {seq}")
        i = seq.index(min(seq))
        seq = seq[i:] + seq[:i]
        if seq[-1] < seq[1]:
            seq = [seq[0]] + seq[:0:-1]
        return cls(tuple(seq))

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def __str__(self) -> str:
        return "-".join(map(str, self.vertices))


def bipartition(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """Two-colour ``g`` by BFS from the lowest vertex of each component.

    Each component's lowest vertex lands in the first part. Returns None
    when ``g`` has an odd cycle.
    """
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in g.adjacency[x]:
                if color[y] == -1:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    return None
    return (frozenset(v for v in range(g.n) if color[v] == 0),
            frozenset(v for v in range(g.n) if color[v] == 1))


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def enumerate_simple_cycles(g: Graph, max_count: int = DEFAULT_CYCLE_BUDGET) -> list[Cycle]:
    """All simple cycles of ``g``, sorted by length then vertex sequence.

    Each cycle is found once: the DFS starts at the cycle's smallest vertex
    and only closes when the second vertex is smaller than the last one.
    Raises CycleBudgetExceeded when there are more than ``max_count``.
    """
    if max_count < 1:
        raise ValueError("max_count must be positive")
    adj = g.adjacency
    found: list[Cycle] = []
    for s in range(g.n):
        path = [s]
        on_path = {s}

        def dfs(x):
            for y in adj[x]:
                if y == s and len(path) >= 3 and path[1] < path[-1]:
                    found.append(Cycle(tuple(path)))
                    if len(found) > max_count:
                        raise CycleBudgetExceeded(max_count, g)
                elif y > s and y not in on_path:
                    path.append(y)
                    on_path.add(y)
                    dfs(y)
                    path.pop()
                    on_path.discard(y)

        dfs(s)
    found.sort(key=lambda c: (len(c), c.vertices))
    return found


def odd_cycles(g: Graph, max_count: int = DEFAULT_CYCLE_BUDGET) -> list[Cycle]:
    return [c for c in enumerate_simple_cycles(g, max_count) if len(c) % 2]


# -- corpus generation ------------------------------------------------------

def _pair_order(n: int) -> list[tuple[int, int]]:
    # Column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    return [(i, j) for j in range(1, n) for i in range(j)]


def canonical_form(n: int, edges: Iterable[tuple[int, int]]) -> tuple[str, tuple[int, ...]]:
    """Lexicographically least adjacency bitstring over all vertex orders.

    The bitstring lists the upper triangle column by column, so choosing the
    ``j``-th vertex of an ordering fixes bits ``(0,j) .. (j-1,j)``. That lets
    a depth-first search over orderings prune any prefix that is already
    larger than the best complete string; the result is exactly the minimum
    over all ``n!`` orderings. Returns the bitstring and one optimal
    ordering (``order[i]`` is the original vertex placed at position ``i``).
    """
    adj = [[False] * n for _ in range(n)]
    for u, v in edges:
        adj[u][v] = adj[v][u] = True
    best: list = [None, None]
    order: list[int] = []
    bits: list[str] = []
    used = [False] * n

    def extend():
        depth = len(order)
        if depth == n:
            s = "".join(bits)
            if best[0] is None or s < best[0]:
                best[0], best[1] = s, tuple(order)
            return
        for v in range(n):
            if used[v]:
                continue
            col = "".join("1" if adj[order[i]][v] else "0" for i in range(depth))
            bits.append(col)
            if best[0] is not None:
                prefix = "".join(bits)
                if prefix > best[0][: len(prefix)]:
                    bits.pop()
                    continue
            used[v] = True
            order.append(v)
            extend()
            order.pop()
            used[v] = False
            bits.pop()

    extend()
    return best[0], best[1]


def graph_from_bitstring(n: int, bits: str) -> Graph:
    edges = [pair for pair, b in zip(_pair_order(n), bits) if b == "1"]
    return Graph.from_edges(edges, n)


@cache
def _all_graphs(n: int) -> list[tuple[int, str]]:
    """Canonical bitstrings of all graphs on n vertices (isolated allowed)."""
    if n == 1:
        return [(1, "")]
    out = set()
    for _, bits in _all_graphs(n - 1):
        base = [pair for pair, b in zip(_pair_order(n - 1), bits) if b == "1"]
        for r in range(n):
            for nbrs in combinations(range(n - 1), r):
                form, _ = canonical_form(n, base + [(u, n - 1) for u in nbrs])
                out.add(form)
    return sorted((n, b) for b in out)


_CONNECTED_CACHE: dict[int, tuple[Graph, ...]] = {}


def enumerate_connected_graphs(n: int) -> list[Graph]:
    """One canonical representative per isomorphism class of connected graphs.

    Graphs are produced by adding a vertex to every graph on ``n - 1``
    vertices and deduplicating by :func:`canonical_form`. The result is
    ordered by edge count, then bitstring. ``n == 1`` yields nothing since a
    lone vertex is isolated.
    """
    if not 1 <= n <= MAX_CORPUS_N:
        raise ValueError(f"corpus generation supports 1 <= n <= {MAX_CORPUS_N}, got {n}")
    if n not in _CONNECTED_CACHE:
        graphs = []
        if n >= 2:
            for _, bits in _all_graphs(n):
                ones = bits.count("1")
                if ones < n - 1:
                    continue
                edges = [p for p, b in zip(_pair_order(n), bits) if b == "1"]
                covered = {x for e in edges for x in e}
                if len(covered) < n:
                    continue
                g = Graph.from_edges(edges, n)
                if g.is_connected():
                    graphs.append((g.m, bits, g))
        graphs.sort(key=lambda t: (t[0], t[1]))
        _CONNECTED_CACHE[n] = tuple(g for _, _, g in graphs)
    return list(_CONNECTED_CACHE[n])


def corpus(max_n: int, min_n: int = 2) -> list[Graph]:
    """All connected graphs with ``min_n <= n <= max_n`` in corpus order."""
    out = []
    for n in range(max(min_n, 2), max_n + 1):
        out.extend(enumerate_connected_graphs(n))
    return out
