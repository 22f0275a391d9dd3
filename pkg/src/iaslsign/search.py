"""Exhaustive search for labelings of a fixed graph.

Two engines produce the same labelings in the same order:

* :func:`enumerate_labelings` is a plain backtracking generator. It is used
  by the CLI and wherever a stream with an early stop is wanted.
* :func:`labeling_matrix` runs the same backtracking breadth-first with
  numpy, keeping every surviving partial assignment as one row. The theorem
  harness uses it because corpora reach millions of labelings.

Candidate labels are the non-empty subsets of the ground set of size at most
``max_label_size``, ordered by their ascending element tuples. Vertices are
assigned in id order, so both engines yield labelings in lexicographic order
of ``(f(0), f(1), ...)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator

import numpy as np

from .graphs import Graph
from .intsets import (
    WILDCARD,
    LabelSet,
    arithmetic_progression_difference,
    compatible_differences,
    sumset_mask,
)
from .labeling import GroundSet, Labeling

FILTER_NAMES = ("any", "iasi", "weak", "strong", "isoarithmetic", "weak_uniform", "strong_uniform")


@dataclass(frozen=True)
class ClassFilter:
    """Which labelings a search keeps.

    ``k`` fixes the uniform edge cardinality for the two uniform filters and
    ``d`` the common difference for ``isoarithmetic``; None means any value.
    Weakly uniform labelings always have ``k >= 2``: with ``k = 1`` every
    label is a singleton and the notion degenerates.
    """

    name: str = "any"
    k: int | None = None
    d: int | None = None

    def __post_init__(self):
        if self.name not in FILTER_NAMES:
            raise ValueError(f"unknown class filter {self.name!r}; expected one of {', '.join(FILTER_NAMES)}")
        if self.k is not None and self.name not in ("weak_uniform", "strong_uniform"):
            raise ValueError(f"k= only applies to uniform filters, not {self.name}")
        if self.d is not None and self.name != "isoarithmetic":
            raise ValueError(f"d= only applies to the isoarithmetic filter, not {self.name}")
        if self.k is not None and self.k < 1:
            raise ValueError("k must be positive")
        if self.d is not None and self.d < 1:
            raise ValueError("d must be positive")

    @classmethod
    def parse(cls, text: str) -> ClassFilter:
        """Parse ``NAME`` or ``NAME,k=K`` or ``NAME,d=D``."""
        name, *opts = [p.strip() for p in text.split(",")]
        kwargs = {}
        for opt in opts:
            key, sep, value = opt.partition("=")
            if not sep or key not in ("k", "d") or key in kwargs:
                raise ValueError(f"bad filter option {opt!r}")
            try:
                kwargs[key] = int(value)
            except ValueError:
                raise ValueError(f"filter option {opt!r} needs an integer") from None
        return cls(name, **kwargs)

    def __str__(self) -> str:
        if self.k is not None:
            return f"{self.name},k={self.k}"
        if self.d is not None:
            return f"{self.name},d={self.d}"
        return self.name

    @property
    def uniform(self) -> bool:
        return self.name in ("weak_uniform", "strong_uniform")

    def edge_ok(self, su: int, sv: int, card: int) -> bool:
        """Per-edge cardinality condition (global conditions excluded)."""
        if self.name in ("weak", "weak_uniform"):
            if card != max(su, sv):
                return False
            if self.name == "weak_uniform" and card < 2:
                return False
        elif self.name in ("strong", "strong_uniform"):
            if card != su * sv:
                return False
        if self.k is not None and card != self.k:
            return False
        return True

    def vertex_ok(self, d: int | None) -> bool:
        if self.name != "isoarithmetic":
            return True
        if d is None:
            return False
        return self.d is None or d in (WILDCARD, self.d)


@dataclass(frozen=True)
class SearchSpec:
    graph: Graph
    ground_set: GroundSet
    class_filter: ClassFilter = ClassFilter()
    max_label_size: int = 3
    limit: int | None = None

    def __post_init__(self):
        if self.max_label_size < 1:
            raise ValueError("max_label_size must be positive")
        if self.max_label_size > len(self.ground_set):
            # Larger sizes contribute nothing; clamp so the invariant holds.
            object.__setattr__(self, "max_label_size", len(self.ground_set))
        if self.limit is not None and self.limit < 0:
            raise ValueError("limit must be non-negative")


@lru_cache(maxsize=64)
def candidate_labels(ground_set: GroundSet, max_label_size: int) -> tuple[LabelSet, ...]:
    """Non-empty subsets of the ground set up to the size bound, in LabelSet order."""
    elems = ground_set.elements
    out = [LabelSet(c) for r in range(1, max_label_size + 1) for c in combinations(elems, r)]
    return tuple(sorted(out))


def enumerate_labelings(spec: SearchSpec) -> Iterator[Labeling]:
    """Yield every labeling matching ``spec`` in lexicographic order.

    Injectivity and the filter's per-edge condition are checked as soon as
    both endpoints of an edge are assigned; uniformity, the common
    difference and edge-label injectivity are tracked incrementally.
    """
    g, flt = spec.graph, spec.class_filter
    cands = candidate_labels(spec.ground_set, spec.max_label_size)
    cand_d = [arithmetic_progression_difference(a) for a in cands]
    back = [[u for u in g.adjacency[v] if u < v] for v in range(g.n)]
    assigned: list[LabelSet | None] = [None] * g.n
    used: set[LabelSet] = set()
    edge_masks: set[int] = set()
    emitted = 0

    def extend(v: int, k: int | None, d: int) -> Iterator[Labeling]:
        nonlocal emitted
        if v == g.n:
            emitted += 1
            yield Labeling(tuple(assigned))
            return
        for a, ad in zip(cands, cand_d):
            if a in used or not flt.vertex_ok(ad):
                continue
            nk, nd = k, d
            if flt.name == "isoarithmetic":
                nd = compatible_differences(nd, ad)
                if nd is None:
                    continue
            new_masks = []
            ok = True
            for u in back[v]:
                b = assigned[u]
                mask = sumset_mask(b.mask, a.mask)
                card = mask.bit_count()
                if not flt.edge_ok(len(b), len(a), card):
                    ok = False
                elif flt.uniform:
                    if nk is None:
                        nk = card
                    ok = card == nk
                elif flt.name == "isoarithmetic":
                    nd = compatible_differences(nd, arithmetic_progression_difference(LabelSet.from_mask(mask)))
                    ok = nd is not None
                elif flt.name == "iasi":
                    ok = mask not in edge_masks and mask not in new_masks
                if not ok:
                    break
                new_masks.append(mask)
            if not ok:
                continue
            assigned[v] = a
            used.add(a)
            if flt.name == "iasi":
                edge_masks.update(new_masks)
            yield from extend(v + 1, nk, nd)
            if flt.name == "iasi":
                edge_masks.difference_update(new_masks)
            used.discard(a)
            assigned[v] = None
            if spec.limit is not None and emitted >= spec.limit:
                return

    if spec.limit == 0:
        return
    yield from extend(0, spec.class_filter.k, WILDCARD)


@dataclass
class PairTables:
    """Lookup tables over ordered pairs of candidate labels."""

    labels: tuple[LabelSet, ...]
    sizes: np.ndarray        # (U,)
    vertex_d: np.ndarray     # (U,) -1 for non-progressions, 0 for WILDCARD
    card: np.ndarray         # (U, U) sumset cardinality
    sum_id: np.ndarray       # (U, U) id of the sumset, equal ids iff equal sets
    edge_d: np.ndarray       # (U, U) progression difference of the sumset
    disjoint: np.ndarray     # (U, U) endpoint difference sets disjoint


@lru_cache(maxsize=16)
def pair_tables(ground_set: GroundSet, max_label_size: int) -> PairTables:
    from .intsets import difference_mask

    labels = candidate_labels(ground_set, max_label_size)
    u = len(labels)
    sizes = np.array([len(a) for a in labels], dtype=np.int16)

    def dcode(d):
        return -1 if d is None else d

    vertex_d = np.array([dcode(arithmetic_progression_difference(a)) for a in labels], dtype=np.int16)
    card = np.zeros((u, u), dtype=np.int16)
    sum_id = np.zeros((u, u), dtype=np.int32)
    edge_d = np.zeros((u, u), dtype=np.int16)
    disjoint = np.zeros((u, u), dtype=bool)
    ids: dict[int, int] = {}
    dmask = [difference_mask(a.mask) for a in labels]
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            m = sumset_mask(a.mask, b.mask)
            card[i, j] = m.bit_count()
            sum_id[i, j] = ids.setdefault(m, len(ids))
            edge_d[i, j] = dcode(arithmetic_progression_difference(LabelSet.from_mask(m)))
            disjoint[i, j] = dmask[i] & dmask[j] == 0
    return PairTables(labels, sizes, vertex_d, card, sum_id, edge_d, disjoint)


def _edge_ok_table(t: PairTables, flt: ClassFilter) -> np.ndarray:
    su = t.sizes[:, None]
    sv = t.sizes[None, :]
    ok = np.ones_like(t.card, dtype=bool)
    if flt.name in ("weak", "weak_uniform"):
        ok &= t.card == np.maximum(su, sv)
        if flt.name == "weak_uniform":
            ok &= t.card >= 2
    elif flt.name in ("strong", "strong_uniform"):
        ok &= t.card == su * sv
    if flt.k is not None:
        ok &= t.card == flt.k
    return ok


def _merge_d(cur: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    ok = (x != -1) & ((cur == 0) | (x == 0) | (cur == x))
    return ok, np.where(cur == 0, x, cur)


def labeling_matrix(spec: SearchSpec) -> tuple[PairTables, np.ndarray]:
    """All labelings matching ``spec`` as rows of candidate-label indices.

    Row ``r`` encodes the labeling ``v -> tables.labels[rows[r, v]]``; rows
    come out in the same order :func:`enumerate_labelings` yields them.
    """
    g, flt = spec.graph, spec.class_filter
    t = pair_tables(spec.ground_set, spec.max_label_size)
    n = g.n
    edge_ok = _edge_ok_table(t, flt)

    allowed = np.ones(len(t.labels), dtype=bool)
    if flt.name == "isoarithmetic":
        allowed &= t.vertex_d != -1
        if flt.d is not None:
            allowed &= (t.vertex_d == 0) | (t.vertex_d == flt.d)
    cand = np.flatnonzero(allowed).astype(np.int16)

    rows = cand[:, None].copy()
    cur_k = np.full(len(rows), flt.k or 0, dtype=np.int16)
    cur_d = t.vertex_d[cand].copy() if flt.name == "isoarithmetic" else np.zeros(len(rows), dtype=np.int16)
    edge_ids = np.zeros((len(rows), 0), dtype=np.int32)
    back = [[u for u in g.adjacency[v] if u < v] for v in range(n)]

    for v in range(1, n):
        r = np.repeat(np.arange(len(rows)), len(cand))
        c = np.tile(cand, len(rows))
        keep = np.ones(len(r), dtype=bool)
        for j in range(v):
            keep &= rows[r, j] != c
        r, c = r[keep], c[keep]
        k, d = cur_k[r], cur_d[r]
        if flt.name == "isoarithmetic":
            ok, d = _merge_d(d, t.vertex_d[c])
        else:
            ok = np.ones(len(r), dtype=bool)
        new_ids = []
        for u in back[v]:
            a = rows[r, u]
            ok &= edge_ok[a, c]
            if flt.uniform:
                card = t.card[a, c]
                k = np.where(k == 0, card, k)
                ok &= card == k
            elif flt.name == "isoarithmetic":
                ok2, d = _merge_d(d, t.edge_d[a, c])
                ok &= ok2
            elif flt.name == "iasi":
                e = t.sum_id[a, c]
                for prev in new_ids:
                    ok &= e != prev
                new_ids.append(e)
        if flt.name == "iasi" and new_ids:
            fresh = np.stack(new_ids, axis=1)
            old = edge_ids[r]
            for col in range(fresh.shape[1]):
                ok &= (old != fresh[:, col][:, None]).all(axis=1)
            edge_ids = np.concatenate([old, fresh], axis=1)[ok]
        elif flt.name == "iasi":
            edge_ids = edge_ids[r][ok]
        rows = np.concatenate([rows[r], c[:, None]], axis=1)[ok]
        cur_k, cur_d = k[ok], d[ok]

    if spec.limit is not None:
        rows = rows[: spec.limit]
    return t, rows


def row_to_labeling(tables: PairTables, row) -> Labeling:
    return Labeling(tuple(tables.labels[int(i)] for i in row))
