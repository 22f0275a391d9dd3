"""Exhaustive verification of balance and clusterability claims.

Every claim in :data:`CATALOG` is checked on every labeling of every corpus
graph that passes the claim's class filter. Both sides of a claim are
evaluated separately through the public classify / signing API, and each
failing direction is reported with the first labeling (in search order)
that exhibits it.

Labelings with the same vertex sizes and edge cardinalities (plus
difference-set disjointness for claims that read it) give identical claim
values, so each claim is evaluated once per distinct feature vector and the
verdict is weighted by how many labelings share it.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from math import isqrt
from typing import Callable

import numpy as np

from .errors import CycleBudgetExceeded
from .graphs import DEFAULT_CYCLE_BUDGET, Cycle, Graph, corpus, enumerate_simple_cycles, is_bipartite
from .intsets import LabelSet, ground_range, sumset_mask
from .labeling import Labeling, LabelingClass, classify, disjoint_differences
from .search import ClassFilter, SearchSpec, enumerate_labelings, labeling_matrix, row_to_labeling
from .signing import CycleCensus, SignedGraph, induce_signature, is_balanced, parity_edge_census, two_clustering

# Cross-checks under the unrestricted filter grow as |subsets|^n; beyond four
# vertices they dominate the run time without exercising anything new.
ANY_FILTER_MAX_N = 4


@dataclass(frozen=True)
class CorpusParams:
    max_n: int = 5
    ground_set: LabelSet = ground_range(0, 4)
    max_label_size: int = 3
    cycle_budget: int = DEFAULT_CYCLE_BUDGET
    max_counterexamples: int = 10

    def to_dict(self) -> dict:
        return {
            "max_n": self.max_n,
            "ground_set": str(self.ground_set),
            "max_label_size": self.max_label_size,
        }


class Instance:
    """One labeled graph, with the derived quantities claims talk about."""

    def __init__(self, graph: Graph, labeling: Labeling, cycles: list[Cycle]):
        self.graph = graph
        self.f = labeling
        self.cycles = cycles

    @cached_property
    def cls(self) -> LabelingClass:
        return classify(self.graph, self.f, cross_check=False)

    @cached_property
    def signed(self) -> SignedGraph:
        return induce_signature(self.graph, self.f)

    @cached_property
    def balanced(self) -> bool:
        return is_balanced(self.signed).balanced

    @cached_property
    def clusterable(self) -> bool:
        return two_clustering(self.signed) is not None

    @cached_property
    def bipartite(self) -> bool:
        return is_bipartite(self.graph)

    @cached_property
    def k(self) -> int | None:
        return self.cls.uniform_k

    @cached_property
    def sizes(self) -> tuple[int, ...]:
        return self.f.sizes()

    @cached_property
    def census(self) -> list[CycleCensus]:
        return [parity_edge_census(self.graph, self.f, c) for c in self.cycles]

    def count_edges(self, pred: Callable[[int, int], bool]) -> int:
        return sum(1 for u, v in self.graph.edges if pred(self.sizes[u] % 2, self.sizes[v] % 2))

    def negative_edges_text(self) -> str:
        neg = self.signed.negative_edges
        return " ".join(f"{u}-{v}" for u, v in neg) or "none"


def _sqrt_even(k: int | None) -> bool:
    return k is not None and isqrt(k) ** 2 == k and isqrt(k) % 2 == 0


def _square(k: int | None) -> bool:
    return k is not None and isqrt(k) ** 2 == k


@dataclass(frozen=True)
class Theorem:
    id: str
    claim: str
    lhs_name: str
    rhs_name: str
    lhs: Callable[[Instance], bool]
    rhs: Callable[[Instance], bool]
    class_filter: ClassFilter = ClassFilter()
    graphs: str = "all"  # "all" | "bipartite" | "non_bipartite"
    kind: str = "iff"  # "iff" | "implies"
    needs_disjoint: bool = False
    per_graph: bool = False

    def graph_ok(self, g: Graph) -> bool:
        if self.graphs == "all":
            return True
        return is_bipartite(g) == (self.graphs == "bipartite")

    def effective_max_n(self, params: CorpusParams) -> int:
        if self.class_filter.name == "any" and not self.per_graph:
            return min(params.max_n, ANY_FILTER_MAX_N)
        return params.max_n


def _weakly_uniform(x: Instance) -> bool:
    return x.cls.is_weak and x.k is not None and x.k >= 2


def _strongly_uniform(x: Instance) -> bool:
    return x.cls.is_strong and x.k is not None


STRONG, WEAK, ISO, ANY = (ClassFilter("strong"), ClassFilter("weak"),
                          ClassFilter("isoarithmetic"), ClassFilter("any"))
STRONG_U, WEAK_U = ClassFilter("strong_uniform"), ClassFilter("weak_uniform")

CATALOG: dict[str, Theorem] = {t.id: t for t in [
    Theorem("S1", "strongly k-uniform: balanced <=> G bipartite or sqrt(k) an even integer",
            "balanced", "bipartite or sqrt(k) even",
            lambda x: x.balanced, lambda x: x.bipartite or _sqrt_even(x.k), STRONG_U),
    Theorem("S2", "strongly k-uniform: clusterable <=> G bipartite and k odd",
            "clusterable", "bipartite and k odd",
            lambda x: x.clusterable, lambda x: x.bipartite and x.k % 2 == 1, STRONG_U),
    Theorem("S3", "strong, G bipartite: clusterable <=> number of odd-odd edges is even",
            "clusterable", "odd-odd edge count even",
            lambda x: x.clusterable, lambda x: x.count_edges(lambda a, b: a and b) % 2 == 0,
            STRONG, "bipartite"),
    Theorem("S3-variant", "strong, G bipartite: clusterable <=> some edge has both ends of odd parity",
            "clusterable", "an odd-odd edge exists",
            lambda x: x.clusterable, lambda x: x.count_edges(lambda a, b: a and b) > 0,
            STRONG, "bipartite"),
    Theorem("S3-balance", "strong, G bipartite: balanced <=> every cycle has an even number of odd-odd edges",
            "balanced", "every cycle has even odd-odd count",
            lambda x: x.balanced, lambda x: all(c.odd_odd_edges % 2 == 0 for c in x.census),
            STRONG, "bipartite"),
    Theorem("S4", "strong: clusterable <=> every odd cycle has an even-even edge and an odd-odd edge",
            "clusterable", "every odd cycle has even-even and odd-odd edges",
            lambda x: x.clusterable,
            lambda x: all(c.even_even_edges >= 1 and c.odd_odd_edges >= 1
                          for cyc, c in zip(x.cycles, x.census) if len(cyc) % 2),
            STRONG),
    Theorem("W1", "weakly k-uniform (k >= 2) => balanced",
            "weakly uniform", "balanced",
            _weakly_uniform, lambda x: x.balanced, WEAK_U, kind="implies"),
    Theorem("W2", "weakly k-uniform (k >= 2): clusterable <=> k odd",
            "clusterable", "k odd",
            lambda x: x.clusterable, lambda x: x.k % 2 == 1, WEAK_U),
    Theorem("W3", "weak, G bipartite: balanced <=> every cycle holds an even number of "
                  "odd-size non-singleton labels",
            "balanced", "every cycle has even odd non-singleton count",
            lambda x: x.balanced, lambda x: all(c.odd_nonsingleton_vertices % 2 == 0 for c in x.census),
            WEAK, "bipartite"),
    Theorem("W4", "weak, G bipartite: clusterable <=> some non-singleton label has odd size",
            "clusterable", "an odd non-singleton label exists",
            lambda x: x.clusterable, lambda x: any(s > 1 and s % 2 for s in x.sizes),
            WEAK, "bipartite"),
    Theorem("W5", "weak, G non-bipartite => not balanced",
            "weak", "not balanced",
            lambda x: x.cls.is_weak, lambda x: not x.balanced, WEAK, "non_bipartite", "implies"),
    Theorem("W6", "weak, G non-bipartite => not clusterable",
            "weak", "not clusterable",
            lambda x: x.cls.is_weak, lambda x: not x.clusterable, WEAK, "non_bipartite", "implies"),
    Theorem("A1", "isoarithmetic: balanced <=> every cycle has an even number of same-parity edges",
            "balanced", "every cycle has even same-parity count",
            lambda x: x.balanced, lambda x: all(c.same_parity_edges % 2 == 0 for c in x.census), ISO),
    Theorem("A2", "isoarithmetic: clusterable <=> some edge joins labels of equal parity",
            "clusterable", "a same-parity edge exists",
            lambda x: x.clusterable, lambda x: x.count_edges(lambda a, b: a == b) > 0, ISO),
    Theorem("L1", "weak <=> every edge has a mono-indexed endpoint",
            "weak", "mono-indexed endpoint on every edge",
            lambda x: x.cls.is_weak, lambda x: all(x.sizes[u] == 1 or x.sizes[v] == 1 for u, v in x.graph.edges),
            ANY),
    Theorem("L2", "strong <=> endpoint difference sets are disjoint on every edge",
            "strong", "difference sets disjoint on every edge",
            lambda x: x.cls.is_strong,
            lambda x: all(disjoint_differences(x.f[u], x.f[v]) for u, v in x.graph.edges),
            ANY, needs_disjoint=True),
    Theorem("L3", "a weakly uniform labeling (k >= 2) exists <=> G bipartite",
            "weakly uniform labeling exists", "bipartite",
            lambda x: x.f is not None, lambda x: x.bipartite, WEAK_U, per_graph=True),
    Theorem("L4", "strongly k-uniform on non-bipartite G => k is a perfect square",
            "strongly uniform", "k perfect square",
            _strongly_uniform, lambda x: _square(x.k), STRONG_U, "non_bipartite", "implies"),
    Theorem("L5", "isoarithmetic => every edge label has |f(u)| + |f(v)| - 1 elements",
            "isoarithmetic", "edge cardinality |f(u)|+|f(v)|-1",
            lambda x: x.cls.is_isoarithmetic,
            lambda x: all(sumset_mask(x.f[u].mask, x.f[v].mask).bit_count() == x.sizes[u] + x.sizes[v] - 1
                          for u, v in x.graph.edges),
            ISO, kind="implies"),
]}

THEOREM_IDS = tuple(CATALOG)


@dataclass(frozen=True)
class Counterexample:
    graph: Graph
    labeling: Labeling | None
    direction: str
    explanation: str

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_text(),
            "labeling": None if self.labeling is None else self.labeling.to_dict(),
            "direction": self.direction,
            "explanation": self.explanation,
        }


@dataclass
class TheoremReport:
    theorem_id: str
    claim: str
    corpus_params: dict
    status: str
    checked_count: int
    violation_count: dict[str, int]
    counterexamples: list[Counterexample] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "claim": self.claim,
            "corpus_params": self.corpus_params,
            "status": self.status,
            "checked_count": self.checked_count,
            "violation_count": self.violation_count,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def evaluate(theorem: Theorem, graph: Graph, labeling: Labeling | None,
             cycles: list[Cycle] | None = None) -> tuple[bool, bool, Instance]:
    """Evaluate both sides of ``theorem`` on one labeled graph."""
    if cycles is None:
        cycles = enumerate_simple_cycles(graph)
    x = Instance(graph, labeling, cycles)
    return theorem.lhs(x), theorem.rhs(x), x


def failing_direction(theorem: Theorem, lhs: bool, rhs: bool) -> str | None:
    if lhs and not rhs:
        return "forward"
    if rhs and not lhs and theorem.kind == "iff":
        return "converse"
    return None


def _explain(theorem: Theorem, lhs: bool, rhs: bool, x: Instance) -> str:
    parts = [f"{theorem.lhs_name}={lhs}", f"{theorem.rhs_name}={rhs}"]
    if x.f is not None:
        parts.append(f"sizes={list(x.sizes)}")
        parts.append(f"negative edges: {x.negative_edges_text()}")
        if x.k is not None:
            parts.append(f"k={x.k}")
    parts.append(f"bipartite={x.bipartite}")
    return "; ".join(parts)


def _group_keys(cols: list[tuple[np.ndarray, int]]) -> tuple[np.ndarray, np.ndarray]:
    """Group rows by feature vector.

    ``cols`` holds ``(matrix, max value)`` pairs. Returns, for every distinct
    feature vector, the index of its first row and its multiplicity, in
    order of first appearance.
    """
    n_rows = len(cols[0][0])
    bits = [(m, max(1, int(hi).bit_length())) for m, hi in cols]
    if sum(b * m.shape[1] for m, b in bits) <= 63:
        keys = np.zeros(n_rows, dtype=np.int64)
        for m, b in bits:
            for j in range(m.shape[1]):
                keys = (keys << b) | m[:, j].astype(np.int64)
        uniq = np.unique(keys)
        inv = np.searchsorted(uniq, keys)
        counts = np.bincount(inv, minlength=len(uniq))
        first = np.full(len(uniq), n_rows, dtype=np.int64)
        np.minimum.at(first, inv, np.arange(n_rows))
    else:
        feats = np.ascontiguousarray(np.concatenate([m for m, _ in cols], axis=1).astype(np.uint8))
        keys = feats.view(np.dtype((np.void, feats.shape[1]))).ravel()
        _, first, counts = np.unique(keys, return_index=True, return_counts=True)
    order = np.argsort(first)
    return first[order], counts[order]


@dataclass
class _GraphResult:
    checked: int
    # (direction, labeling, explanation, multiplicity), in search order
    violations: list


def _check_graph(theorem_ids: tuple[str, ...], g: Graph, params: CorpusParams) -> dict[str, _GraphResult]:
    """Check every listed theorem (all sharing one class filter) on ``g``."""
    theorems = [CATALOG[t] for t in theorem_ids]
    try:
        cycles = enumerate_simple_cycles(g, params.cycle_budget)
    except CycleBudgetExceeded as exc:
        raise CycleBudgetExceeded(exc.budget, g) from None
    spec = SearchSpec(g, params.ground_set, theorems[0].class_filter, params.max_label_size)
    tables, rows = labeling_matrix(spec)
    out = {}

    for th in theorems:
        if th.per_graph:
            witness = row_to_labeling(tables, rows[0]) if len(rows) else None
            lhs, rhs, x = evaluate(th, g, witness, cycles)
            bad = failing_direction(th, lhs, rhs)
            out[th.id] = _GraphResult(1, [(bad, witness, _explain(th, lhs, rhs, x), 1)] if bad else [])
    per_labeling = [th for th in theorems if not th.per_graph]
    if not per_labeling:
        return out
    if len(rows) == 0:
        out.update({th.id: _GraphResult(0, []) for th in per_labeling})
        return out

    us = np.array([u for u, _ in g.edges])
    vs = np.array([v for _, v in g.edges])
    a, b = rows[:, us], rows[:, vs]
    cols = [(tables.sizes[rows], spec.max_label_size), (tables.card[a, b], spec.max_label_size ** 2)]
    if any(th.needs_disjoint for th in per_labeling):
        cols.append((tables.disjoint[a, b], 1))
    first, counts = _group_keys(cols)

    for th in per_labeling:
        out[th.id] = _GraphResult(len(rows), [])
    for idx, cnt in zip(first.tolist(), counts.tolist()):
        f = row_to_labeling(tables, rows[idx])
        x = Instance(g, f, cycles)
        for th in per_labeling:
            lhs, rhs = th.lhs(x), th.rhs(x)
            bad = failing_direction(th, lhs, rhs)
            if bad:
                out[th.id].violations.append((bad, f, _explain(th, lhs, rhs, x), cnt))
    return out


def _task(args):
    return _check_graph(*args)


def theorem_corpus(theorem: Theorem, params: CorpusParams) -> list[Graph]:
    return [g for g in corpus(theorem.effective_max_n(params)) if theorem.graph_ok(g)]


def _report(theorem: Theorem, params: CorpusParams, per_graph: list[tuple[Graph, _GraphResult]]) -> TheoremReport:
    counts = {"forward": 0} if theorem.kind == "implies" else {"forward": 0, "converse": 0}
    examples = []
    checked = 0
    for g, res in per_graph:
        checked += res.checked
        for direction, f, why, cnt in res.violations:
            counts[direction] += cnt
            if len(examples) < params.max_counterexamples:
                examples.append(Counterexample(g, f, direction, why))

    failed = [d for d, c in counts.items() if c]
    if not failed:
        status = "confirmed"
    elif theorem.kind == "iff" and len(failed) == 1:
        status = "partially_refuted"
    else:
        status = "refuted"
    corpus_params = params.to_dict()
    corpus_params["max_n"] = theorem.effective_max_n(params)
    corpus_params["class_filter"] = str(theorem.class_filter)
    corpus_params["graphs"] = theorem.graphs
    return TheoremReport(theorem.id, theorem.claim, corpus_params, status, checked, counts, examples)


def verify_theorems(theorem_ids, params: CorpusParams = CorpusParams(), workers: int = 1) -> list[TheoremReport]:
    """Check several catalog claims, sharing work between claims with one filter.

    Each (class filter, graph) pair is one task: the labelings of that graph
    are enumerated once and every claim using the filter is evaluated on
    them. Tasks go to ``workers`` processes and results are merged in corpus
    order, so reports do not depend on the worker count.
    """
    theorem_ids = list(theorem_ids)
    for tid in theorem_ids:
        if tid not in CATALOG:
            raise KeyError(f"unknown theorem id {tid!r}; known: {', '.join(THEOREM_IDS)}")
    groups: dict[ClassFilter, list[Theorem]] = {}
    for tid in dict.fromkeys(theorem_ids):
        th = CATALOG[tid]
        groups.setdefault(th.class_filter, []).append(th)

    tasks = []
    for members in groups.values():
        top = max(th.effective_max_n(params) for th in members)
        for g in corpus(top):
            ids = tuple(th.id for th in members if th.graph_ok(g) and g.n <= th.effective_max_n(params))
            if ids:
                tasks.append((ids, g, params))
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_task, tasks))
    else:
        results = [_task(t) for t in tasks]

    collected: dict[str, list] = {tid: [] for tid in theorem_ids}
    for (ids, g, _), res in zip(tasks, results):
        for tid in ids:
            collected[tid].append((g, res[tid]))
    return [_report(CATALOG[tid], params, collected[tid]) for tid in theorem_ids]


def verify_theorem(theorem_id: str, params: CorpusParams = CorpusParams(), workers: int = 1) -> TheoremReport:
    """Check one catalog claim over the corpus described by ``params``."""
    return verify_theorems([theorem_id], params, workers)[0]


def verify_all(params: CorpusParams = CorpusParams(), workers: int = 1) -> list[TheoremReport]:
    return verify_theorems(THEOREM_IDS, params, workers)


def minimal_counterexample(theorem_id: str, params: CorpusParams = CorpusParams()) -> Counterexample | None:
    report = verify_theorem(theorem_id, params)
    return report.counterexamples[0] if report.counterexamples else None


def replay(theorem_id: str, graph: Graph, labeling: Labeling | None,
           params: CorpusParams = CorpusParams()) -> str | None:
    """Re-evaluate a counterexample from scratch; returns the failing direction."""
    theorem = CATALOG[theorem_id]
    if theorem.per_graph and labeling is None:
        spec = SearchSpec(graph, params.ground_set, theorem.class_filter, params.max_label_size, limit=1)
        labeling = next(enumerate_labelings(spec), None)
    lhs, rhs, _ = evaluate(theorem, graph, labeling)
    return failing_direction(theorem, lhs, rhs)
