"""Integer additive set-labelings: validation and classification."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    ConsistencyError,
    EmptyLabel,
    GraphFormatError,
    LabelOutsideGroundSet,
    MissingLabel,
    NotInjective,
    UnknownEdge,
)
from .graphs import Graph
from .intsets import (
    MAX_ELEM,
    WILDCARD,
    LabelSet,
    arithmetic_progression_difference,
    compatible_differences,
    difference_mask,
    ground_range,
    sumset,
)

GroundSet = LabelSet

DEFAULT_GROUND_SET = ground_range(0, MAX_ELEM)


@dataclass(frozen=True)
class Labeling:
    """Assignment of a LabelSet to each vertex ``0..len(labels)-1``."""

    labels: tuple[LabelSet, ...]

    @classmethod
    def from_mapping(cls, mapping: Mapping, n: int | None = None) -> Labeling:
        """Build from ``{vertex: iterable of ints}``; keys may be strings.

        When ``n`` is given every vertex in ``range(n)`` must be present and
        no other key is allowed.
        """
        by_vertex = {}
        for key, elems in mapping.items():
            try:
                v = int(key)
            except (TypeError, ValueError):
                raise GraphFormatError(f"vertex id {key!r} is not an integer") from None
            if v < 0:
                raise GraphFormatError(f"negative vertex id {v}")
            if v in by_vertex:
                raise GraphFormatError(f"vertex {v} labeled twice")
            elems = list(elems)
            if not elems:
                raise EmptyLabel(v)
            if any(not isinstance(x, int) or isinstance(x, bool) for x in elems):
                raise GraphFormatError(f"label of vertex {v} must contain integers only")
            if sorted(set(elems)) != elems:
                raise GraphFormatError(f"label of vertex {v} must be strictly ascending")
            try:
                by_vertex[v] = LabelSet(elems)
            except ValueError as exc:
                raise GraphFormatError(f"label of vertex {v}: {exc}") from None
        size = n if n is not None else 1 + max(by_vertex, default=-1)
        for v in range(size):
            if v not in by_vertex:
                raise MissingLabel(v)
        extra = [v for v in by_vertex if v >= size]
        if extra:
            raise GraphFormatError(f"vertex {min(extra)} is not in the graph")
        return cls(tuple(by_vertex[v] for v in range(size)))

    @classmethod
    def of(cls, *labels: Iterable[int]) -> Labeling:
        """``Labeling.of([0], [1, 2])`` labels vertex 0 by {0} and 1 by {1,2}."""
        return cls(tuple(LabelSet(x) for x in labels))

    def __getitem__(self, v: int) -> LabelSet:
        return self.labels[v]

    def __len__(self) -> int:
        return len(self.labels)

    def to_dict(self) -> dict[str, list[int]]:
        return {str(v): list(a.elements) for v, a in enumerate(self.labels)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.labels)

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.labels)) + ")"


@dataclass(frozen=True)
class LabelingClass:
    is_iasi: bool
    is_weak: bool
    is_strong: bool
    is_isoarithmetic: bool
    # None when not isoarithmetic or when every label is a singleton.
    isoarithmetic_d: int | None
    uniform_k: int | None
    vertex_uniform: bool

    def to_dict(self) -> dict:
        return {
            "is_iasi": self.is_iasi,
            "is_weak": self.is_weak,
            "is_strong": self.is_strong,
            "is_isoarithmetic": self.is_isoarithmetic,
            "isoarithmetic_d": self.isoarithmetic_d,
            "uniform_k": self.uniform_k,
            "vertex_uniform": self.vertex_uniform,
        }


def edge_label(g: Graph, f: Labeling, u: int, v: int) -> LabelSet:
    if not g.has_edge(u, v):
        raise UnknownEdge(u, v)
    return sumset(f[u], f[v])


def edge_labels(g: Graph, f: Labeling) -> list[LabelSet]:
    """Edge set-labels in the order of ``g.edges``."""
    return [sumset(f[u], f[v]) for u, v in g.edges]


def validate_iasl(g: Graph, f: Labeling, x: GroundSet = DEFAULT_GROUND_SET) -> None:
    """Raise the first violation of the IASL conditions, scanning vertices in order."""
    if len(f) != g.n:
        if len(f) < g.n:
            raise MissingLabel(len(f))
        raise GraphFormatError(f"vertex {g.n} is not in the graph")
    owner: dict[LabelSet, int] = {}
    for v, a in enumerate(f.labels):
        if not a.issubset(x):
            raise LabelOutsideGroundSet(v)
        if a in owner:
            raise NotInjective(owner[a], v)
        owner[a] = v


def is_iasi(g: Graph, f: Labeling) -> bool:
    labels = edge_labels(g, f)
    return len(set(labels)) == len(labels)


def mono_indexed_vertices(f: Labeling) -> frozenset[int]:
    return frozenset(v for v, a in enumerate(f.labels) if len(a) == 1)


def isoarithmetic_difference(g: Graph, f: Labeling) -> tuple[bool, int | None]:
    """Check that all vertex and edge labels are progressions with one difference.

    Returns ``(is_isoarithmetic, d)`` where ``d`` is None when no label has a
    definite difference (every label is a singleton).
    """
    d = WILDCARD
    for a in list(f.labels) + edge_labels(g, f):
        d = compatible_differences(d, arithmetic_progression_difference(a))
        if d is None:
            return False, None
    return True, (d if d != WILDCARD else None)


def disjoint_differences(a: LabelSet, b: LabelSet) -> bool:
    return difference_mask(a.mask) & difference_mask(b.mask) == 0


def classify(g: Graph, f: Labeling, cross_check: bool = True) -> LabelingClass:
    """Evaluate every class condition directly on each edge.

    With ``cross_check`` the weak flag is compared against the
    mono-indexed-endpoint characterisation and the strong flag against
    disjointness of the endpoint difference sets; a disagreement raises
    ConsistencyError. The theorem harness turns this off so it can report
    such disagreements instead.
    """
    sizes = f.sizes()
    cards = [len(e) for e in edge_labels(g, f)]
    weak = all(c == max(sizes[u], sizes[v]) for c, (u, v) in zip(cards, g.edges))
    strong = all(c == sizes[u] * sizes[v] for c, (u, v) in zip(cards, g.edges))

    if cross_check:
        mono_endpoint = all(sizes[u] == 1 or sizes[v] == 1 for u, v in g.edges)
        if weak != mono_endpoint:
            raise ConsistencyError(f"weak={weak} but mono-indexed endpoint check={mono_endpoint} for {f}")
        if strong != all(disjoint_differences(f[u], f[v]) for u, v in g.edges):
            raise ConsistencyError(f"strong={strong} disagrees with the difference-set check for {f}")

    iso, d = isoarithmetic_difference(g, f)
    return LabelingClass(
        is_iasi=is_iasi(g, f),
        is_weak=weak,
        is_strong=strong,
        is_isoarithmetic=iso,
        isoarithmetic_d=d,
        uniform_k=cards[0] if cards and len(set(cards)) == 1 else None,
        vertex_uniform=len(set(sizes)) == 1,
    )
