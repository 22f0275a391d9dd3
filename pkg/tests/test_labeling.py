from itertools import combinations, permutations
from math import isqrt

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import complete, path
from iaslsign.errors import (
    ConsistencyError,
    EmptyLabel,
    GraphFormatError,
    LabelOutsideGroundSet,
    MissingLabel,
    NotInjective,
    UnknownEdge,
)
from iaslsign.graphs import bipartition, enumerate_connected_graphs
from iaslsign.intsets import ground_range
from iaslsign.labeling import (
    Labeling,
    classify,
    edge_label,
    is_iasi,
    mono_indexed_vertices,
    validate_iasl,
)


def all_labelings(n, elems=range(5), max_size=3):
    subsets = [c for r in range(1, max_size + 1) for c in combinations(elems, r)]
    for combo in permutations(subsets, n):
        yield Labeling.of(*combo)


def is_ap(xs):
    return len({b - a for a, b in zip(xs, xs[1:])}) <= 1


class TestLabeling:
    def test_from_mapping(self):
        f = Labeling.from_mapping({"0": [0, 2], "1": [1]})
        assert f.to_json() == '{"0":[0,2],"1":[1]}'
        assert str(f[0]) == "{0,2}"

    def test_from_mapping_errors(self):
        with pytest.raises(EmptyLabel):
            Labeling.from_mapping({"0": [], "1": [1]})
        with pytest.raises(MissingLabel):
            Labeling.from_mapping({"0": [0]}, n=2)
        with pytest.raises(GraphFormatError):
            Labeling.from_mapping({"0": [2, 1]})
        with pytest.raises(GraphFormatError):
            Labeling.from_mapping({"0": [0], "1": [1], "2": [2]}, n=2)


class TestEdgeLabel:
    @pytest.mark.parametrize("a, b, expected", [
        ((1,), (2,), (3,)),
        ((0, 1), (0, 2), (0, 1, 2, 3)),
        ((3,), (1, 4), (4, 7)),
    ])
    def test_examples(self, a, b, expected):
        assert edge_label(path(2), Labeling.of(a, b), 0, 1).elements == expected

    def test_unknown_edge(self):
        with pytest.raises(UnknownEdge):
            edge_label(path(3), Labeling.of((0,), (1,), (2,)), 0, 2)


class TestValidate:
    def test_valid(self):
        validate_iasl(path(2), Labeling.of((0,), (1,)), ground_range(0, 1))

    def test_not_injective(self):
        with pytest.raises(NotInjective) as exc:
            validate_iasl(path(2), Labeling.of((0,), (0,)))
        assert (exc.value.u, exc.value.v) == (0, 1)

    def test_outside_ground_set(self):
        with pytest.raises(LabelOutsideGroundSet) as exc:
            validate_iasl(path(2), Labeling.of((0,), (5,)), ground_range(0, 1))
        assert exc.value.u == 1

    def test_missing(self):
        with pytest.raises(MissingLabel):
            validate_iasl(path(3), Labeling.of((0,), (1,)))


class TestIasi:
    def test_single_edge(self):
        assert is_iasi(path(2), Labeling.of((0,), (1,)))

    @pytest.mark.parametrize("labels", [((0,), (1,), (2,)), ((1,), (2,), (0, 3)), ((0,), (2,), (1, 3))])
    def test_p3_examples(self, labels):
        assert is_iasi(path(3), Labeling.of(*labels))

    def test_sweep_finds_duplicate_edge_labels(self):
        g = path(3)
        failing = [f for f in all_labelings(3, range(4), 3) if not is_iasi(g, f)]
        assert failing
        for f in failing:
            assert {a + b for a in f[0] for b in f[1]} == {a + b for a in f[1] for b in f[2]}
        assert Labeling.of((0, 2), (0, 1), (0, 1, 2)) in failing


class TestClassify:
    def test_weak_and_strong_overlap(self):
        c = classify(path(2), Labeling.of((1,), (2, 3)))
        assert c.is_weak and c.is_strong and c.uniform_k == 2

    def test_strong_not_weak(self):
        c = classify(path(2), Labeling.of((0, 1), (0, 2)))
        assert c.is_strong and not c.is_weak and c.uniform_k == 4

    def test_isoarithmetic(self):
        c = classify(path(3), Labeling.of((0, 2), (1,), (3, 5)))
        assert c.is_isoarithmetic and c.isoarithmetic_d == 2

    def test_not_isoarithmetic(self):
        c = classify(path(2), Labeling.of((0, 1), (0, 2)))
        assert not c.is_isoarithmetic and c.isoarithmetic_d is None

    def test_all_singletons(self):
        c = classify(complete(3), Labeling.of((0,), (1,), (2,)))
        assert c.is_weak and c.is_strong and c.is_isoarithmetic and c.isoarithmetic_d is None
        assert c.uniform_k == 1 and c.vertex_uniform

    def test_cross_check_alarm_fires_on_inconsistency(self, monkeypatch):
        from iaslsign import labeling
        monkeypatch.setattr(labeling, "disjoint_differences", lambda a, b: False)
        with pytest.raises(ConsistencyError):
            classify(path(2), Labeling.of((0,), (1,)))


@pytest.mark.parametrize("labels, expected", [
    (((1,), (2, 3)), {0}),
    (((0,), (1,), (2,)), {0, 1, 2}),
    (((0, 1), (0, 2)), set()),
])
def test_mono_indexed(labels, expected):
    assert mono_indexed_vertices(Labeling.of(*labels)) == expected


def corpus_labelings(max_n=3):
    for n in range(2, max_n + 1):
        for g in enumerate_connected_graphs(n):
            for f in all_labelings(n):
                yield g, f


class TestCharacterisations:
    """Definition-level flags against the characterisations, computed naively."""

    def test_sweep(self):
        seen = 0
        for g, f in corpus_labelings(3):
            c = classify(g, f, cross_check=False)
            sums = [{a + b for a in f[u] for b in f[v]} for u, v in g.edges]
            mono = all(len(f[u]) == 1 or len(f[v]) == 1 for u, v in g.edges)
            assert c.is_weak == mono
            diffs = [{abs(a - b) for a in f[v] for b in f[v] if a != b} for v in range(g.n)]
            assert c.is_strong == all(not diffs[u] & diffs[v] for u, v in g.edges)
            if c.is_isoarithmetic:
                for s, (u, v) in zip(sums, g.edges):
                    assert len(s) == len(f[u]) + len(f[v]) - 1
            else:
                labels = [f[v].elements for v in range(g.n)] + [tuple(sorted(s)) for s in sums]
                ds = {b - a for xs in labels for a, b in zip(xs, xs[1:])}
                assert not all(is_ap(xs) for xs in labels) or len(ds) > 1
            if c.uniform_k is not None and c.is_weak and c.uniform_k >= 2:
                assert bipartition(g) is not None
            if c.uniform_k is not None and c.is_strong and bipartition(g) is None:
                assert isqrt(c.uniform_k) ** 2 == c.uniform_k
            seen += 1
        assert seen > 0


label_lists = st.lists(st.frozensets(st.integers(0, 8), min_size=1, max_size=4), min_size=2, max_size=2, unique=True)


@given(label_lists)
def test_p2_classification_matches_definitions(labels):
    f = Labeling.of(*labels)
    c = classify(path(2), f)
    a, b = labels
    card = len({x + y for x in a for y in b})
    assert c.is_weak == (card == max(len(a), len(b)))
    assert c.is_strong == (card == len(a) * len(b))
    assert c.uniform_k == card
    assert c.vertex_uniform == (len(a) == len(b))
