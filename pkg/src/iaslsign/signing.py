"""Induced signatures, balance and 2-clusterability of signed graphs.

Signs are stored as ``+1`` / ``-1`` so that the sign of a walk is the
product of its edge signs.

The fast balance and clustering checks can be cross-checked against
brute-force oracles (all simple cycles, all vertex bipartitions). Pass
``oracle=True`` or set :data:`CROSS_CHECK` to enable this globally; the test
suite does the latter.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import ConsistencyError, UnknownCycle
from .graphs import DEFAULT_CYCLE_BUDGET, Cycle, Graph, enumerate_simple_cycles
from .intsets import sumset_mask
from .labeling import Labeling

POSITIVE, NEGATIVE = 1, -1

CROSS_CHECK = os.environ.get("IASLSIGN_CROSS_CHECK", "") not in ("", "0")

# Above this many vertices the clustering oracle is skipped.
BRUTE_FORCE_MAX_N = 10


def sign_symbol(s: int) -> str:
    return "+" if s > 0 else "-"


@dataclass(frozen=True)
class SignedGraph:
    graph: Graph
    signs: tuple[int, ...]  # aligned with graph.edges

    def __post_init__(self):
        if len(self.signs) != self.graph.m:
            raise ValueError("one sign per edge is required")
        if any(s not in (POSITIVE, NEGATIVE) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def from_signed_edges(cls, triples: Sequence[tuple[int, int, int]], n: int | None = None) -> SignedGraph:
        g = Graph.from_edges([(u, v) for u, v, _ in triples], n)
        by_edge = {(min(u, v), max(u, v)): s for u, v, s in triples}
        return cls(g, tuple(by_edge[e] for e in g.edges))

    def sign(self, u: int, v: int) -> int:
        i = self.graph.edge_index(u, v)
        if i is None:
            raise KeyError((u, v))
        return self.signs[i]

    @property
    def negative_edges(self) -> list[tuple[int, int]]:
        return [e for e, s in zip(self.graph.edges, self.signs) if s < 0]

    def to_text(self) -> str:
        return "".join(f"{u} {v} {sign_symbol(s)}\n" for (u, v), s in zip(self.graph.edges, self.signs))


@dataclass(frozen=True)
class Balance:
    """Outcome of a balance check; truthy iff balanced.

    A balanced graph carries the partition ``(v1, v2)`` whose crossing edges
    are exactly the negative ones; an unbalanced graph carries a negative
    simple cycle.
    """

    balanced: bool
    partition: tuple[frozenset[int], frozenset[int]] | None = None
    cycle: Cycle | None = None

    def __bool__(self) -> bool:
        return self.balanced


@dataclass(frozen=True)
class Clustering2:
    u1: frozenset[int]
    u2: frozenset[int]


@dataclass(frozen=True)
class CycleCensus:
    odd_odd_edges: int
    even_even_edges: int
    same_parity_edges: int
    odd_nonsingleton_vertices: int
    negative_edges: int


def induce_signature(g: Graph, f: Labeling) -> SignedGraph:
    """Sign each edge ``+`` when its set-label has even cardinality, ``-`` otherwise."""
    signs = []
    for u, v in g.edges:
        card = sumset_mask(f[u].mask, f[v].mask).bit_count()
        signs.append(NEGATIVE if card % 2 else POSITIVE)
    return SignedGraph(g, tuple(signs))


def _check_cycle(g: Graph, c: Cycle) -> None:
    vs = c.vertices
    if len(vs) < 3 or len(set(vs)) != len(vs) or any(not 0 <= v < g.n for v in vs):
        raise UnknownCycle(f"{c} is not a simple cycle on {g.n} vertices")
    for u, v in c.edges():
        if not g.has_edge(u, v):
            raise UnknownCycle(f"{c} uses non-edge {u} {v}")


def cycle_sign(s: SignedGraph, c: Cycle) -> int:
    _check_cycle(s.graph, c)
    product = POSITIVE
    for u, v in c.edges():
        product *= s.sign(u, v)
    return product


def balance_oracle(s: SignedGraph, max_cycles: int = DEFAULT_CYCLE_BUDGET) -> bool:
    """Balanced iff every simple cycle has positive sign (brute force)."""
    return all(cycle_sign(s, c) > 0 for c in enumerate_simple_cycles(s.graph, max_cycles))


def _tree_path(parent: list[int], x: int) -> list[int]:
    path = [x]
    while parent[x] != -1:
        x = parent[x]
        path.append(x)
    return path


def is_balanced(s: SignedGraph, oracle: bool | None = None, max_cycles: int = DEFAULT_CYCLE_BUDGET) -> Balance:
    """Decide balance by two-colouring where a negative edge flips the colour.

    Each component is searched breadth-first from its lowest vertex, which
    goes to the first part. On a colour conflict the returned cycle is the
    conflicting edge closed up through the search tree.
    """
    g = s.graph
    adj = g.adjacency
    color = [-1] * g.n
    parent = [-1] * g.n
    result = None
    for root in range(g.n):
        if color[root] != -1 or result is not None:
            continue
        color[root] = 0
        queue = deque([root])
        while queue and result is None:
            x = queue.popleft()
            for y in adj[x]:
                want = color[x] ^ (s.sign(x, y) < 0)
                if color[y] == -1:
                    color[y] = want
                    parent[y] = x
                    queue.append(y)
                elif color[y] != want:
                    px, py = _tree_path(parent, x), _tree_path(parent, y)
                    common = set(px) & set(py)
                    i = next(k for k, v in enumerate(px) if v in common)
                    j = py.index(px[i])
                    result = Balance(False, cycle=Cycle.canonical(px[: i + 1] + py[:j][::-1]))
                    break
    if result is None:
        result = Balance(True, partition=(frozenset(v for v in range(g.n) if color[v] == 0),
                                          frozenset(v for v in range(g.n) if color[v] == 1)))

    if CROSS_CHECK if oracle is None else oracle:
        expected = balance_oracle(s, max_cycles)
        if expected != result.balanced:
            raise ConsistencyError(f"fast balance={result.balanced} but cycle oracle={expected}")
        if result.cycle is not None and cycle_sign(s, result.cycle) > 0:
            raise ConsistencyError(f"witness cycle {result.cycle} is positive")
    return result


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def is_valid_clustering(s: SignedGraph, u1: frozenset[int]) -> bool:
    """Both clusters non-empty, positive edges inside, negative edges across."""
    if not u1 or len(u1) == s.graph.n:
        return False
    for (u, v), sg in zip(s.graph.edges, s.signs):
        if ((u in u1) == (v in u1)) != (sg > 0):
            return False
    return True


def clustering_oracle(s: SignedGraph) -> Clustering2 | None:
    """Brute force over all 2^n vertex bipartitions.

    Bipartitions are visited in lexicographic order of the membership
    vector (vertex 0 first, 0 meaning the first cluster), so the first hit
    is the same witness :func:`two_clustering` returns.
    """
    n = s.graph.n
    for code in range(1 << n):
        u1 = frozenset(v for v in range(n) if not code >> (n - 1 - v) & 1)
        if is_valid_clustering(s, u1):
            return Clustering2(u1, frozenset(range(n)) - u1)
    return None


def two_clustering(s: SignedGraph, oracle: bool | None = None) -> Clustering2 | None:
    """Find a 2-clustering with both clusters non-empty, or None.

    Positive edges are contracted into super-vertices; a negative edge inside
    a super-vertex rules clustering out. The contracted graph is then
    two-coloured with every negative edge joining different colours, each
    component's lowest vertex taking the first cluster. If that leaves the
    second cluster empty, the component with the largest lowest vertex is
    flipped when there is more than one component. The result is the
    clustering whose membership vector is lexicographically least.
    """
    g = s.graph
    rep = list(range(g.n))
    for (u, v), sg in zip(g.edges, s.signs):
        if sg > 0:
            ru, rv = _find(rep, u), _find(rep, v)
            if ru != rv:
                rep[max(ru, rv)] = min(ru, rv)
    supers = [_find(rep, v) for v in range(g.n)]

    result = None
    contracted: dict[int, list[int]] = {r: [] for r in sorted(set(supers))}
    feasible = True
    for (u, v), sg in zip(g.edges, s.signs):
        if sg < 0:
            a, b = supers[u], supers[v]
            if a == b:
                feasible = False
                break
            contracted[a].append(b)
            contracted[b].append(a)

    if feasible:
        # Super-vertex representatives are their smallest member, so visiting
        # them in ascending order starts each component at its lowest vertex.
        side: dict[int, int] = {}
        roots = []
        for r in contracted:
            if r in side:
                continue
            roots.append(r)
            side[r] = 0
            queue = deque([r])
            while queue and feasible:
                x = queue.popleft()
                for y in contracted[x]:
                    if y not in side:
                        side[y] = 1 - side[x]
                        queue.append(y)
                    elif side[y] == side[x]:
                        feasible = False
                        break
        if feasible:
            if all(v == 0 for v in side.values()):
                if len(roots) > 1:
                    # Components of the contracted graph with no negative
                    # edge are single super-vertices, so flipping one is just
                    # moving that super-vertex.
                    last = roots[-1]
                    comp = {last}
                    stack = [last]
                    while stack:
                        x = stack.pop()
                        for y in contracted[x]:
                            if y not in comp:
                                comp.add(y)
                                stack.append(y)
                    for x in comp:
                        side[x] ^= 1
                else:
                    feasible = False
        if feasible:
            u1 = frozenset(v for v in range(g.n) if side[supers[v]] == 0)
            result = Clustering2(u1, frozenset(range(g.n)) - u1)

    if (CROSS_CHECK if oracle is None else oracle) and g.n <= BRUTE_FORCE_MAX_N:
        expected = clustering_oracle(s)
        if expected != result:
            raise ConsistencyError(f"two_clustering={result} but brute force={expected}")
        if result is not None and not is_balanced(s, oracle=False):
            raise ConsistencyError("a 2-clusterable signed graph must be balanced")
    return result


def parity_edge_census(g: Graph, f: Labeling, c: Cycle) -> CycleCensus:
    """Parity counts along cycle ``c`` under labeling ``f``.

    Negative edges are counted under the induced signature.
    """
    _check_cycle(g, c)
    odd_odd = even_even = negative = 0
    for u, v in c.edges():
        pu, pv = len(f[u]) % 2, len(f[v]) % 2
        if pu and pv:
            odd_odd += 1
        elif not pu and not pv:
            even_even += 1
        if sumset_mask(f[u].mask, f[v].mask).bit_count() % 2:
            negative += 1
    odd_nonsingleton = sum(1 for v in c.vertices if len(f[v]) > 1 and len(f[v]) % 2)
    return CycleCensus(odd_odd, even_even, odd_odd + even_even, odd_nonsingleton, negative)
