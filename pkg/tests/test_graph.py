from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ftspan.graph import (
    INFINITY,
    GraphFormatError,
    WeightedMultigraph,
    connectivity_classes,
    dist,
    dump_graph,
    lightness,
    load_graph,
    min_edge_cut,
    mst,
    pair_edge_connectivity,
    short_path,
    weighted_girth,
)
from ftspan.oracles import (
    connectivity_classes_bruteforce,
    pair_edge_connectivity_bruteforce,
    weighted_girth_bruteforce,
)
from strategies import graph_with_subset, multigraphs

TRIANGLE = "3 3\n0 1 1\n0 2 1\n1 2 10\n"


def unit_cycle(n: int) -> WeightedMultigraph:
    return WeightedMultigraph(n, [(i, (i + 1) % n, 1) for i in range(n)])


def k4() -> WeightedMultigraph:
    return WeightedMultigraph(4, [(u, v, 1) for u, v in combinations(range(4), 2)])


class TestLoad:
    def test_triangle(self):
        g = load_graph(TRIANGLE)
        assert g.n == 3 and g.m == 3
        assert g.edges[2].w == 10
        assert [e.id for e in g.edges] == [0, 1, 2]

    def test_single_vertex(self):
        g = load_graph("1 0")
        assert (g.n, g.m) == (1, 0)

    def test_parallel_edges(self):
        g = load_graph("2 2\n0 1 3\n0 1 5\n")
        assert [(e.u, e.v, e.w) for e in g.edges] == [(0, 1, 3), (0, 1, 5)]

    def test_rationals_comments_and_explicit_ids(self):
        g = load_graph("# header next\n3 2\n\n1 2 3/4 1  # tail\n0 1 0.5 0\n")
        assert g.edges[0].w == Fraction(1, 2)
        assert g.edges[1].w == Fraction(3, 4)
        assert g.scale == 4

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "3\n",
            "2 1\n0 1\n",
            "2 1\n0 1 0\n",
            "2 1\n0 1 -2\n",
            "2 1\n1 1 3\n",
            "2 1\n0 5 3\n",
            "2 2\n0 1 1 0\n0 1 2 0\n",
            "2 2\n0 1 1 0\n0 1 2 7\n",
            "2 2\n0 1 1\n",
            "2 1\n0 1 abc\n",
        ],
    )
    def test_rejects_malformed(self, text):
        with pytest.raises(GraphFormatError):
            load_graph(text)

    @given(multigraphs(min_n=1))
    def test_round_trip(self, g):
        assert load_graph(dump_graph(g)) == g


class TestDistances:
    def test_triangle_detour(self):
        g = load_graph(TRIANGLE)
        assert dist(g.full(), 1, 2) == 2

    def test_self_distance(self):
        g = load_graph(TRIANGLE)
        assert all(dist(g.subgraph([]), x, x) == 0 for x in range(3))

    def test_disconnected(self):
        g = WeightedMultigraph(2, [])
        assert dist(g.full(), 0, 1) == INFINITY

    def test_vertex_out_of_range(self):
        g = load_graph(TRIANGLE)
        with pytest.raises(IndexError):
            dist(g.full(), 0, 3)

    def test_short_path_respects_limit(self):
        g = load_graph(TRIANGLE)
        assert short_path(g.full(), 1, 2) == [0, 1]
        assert short_path(g.full(), 1, 2, limit=Fraction(19, 10)) is None

    @settings(max_examples=60)
    @given(graph_with_subset(max_n=6, max_m=10))
    def test_triangle_inequality_and_monotone(self, pair):
        g, h = pair
        full = g.full()
        for x, y, z in combinations(range(g.n), 3):
            assert dist(full, x, z) <= dist(full, x, y) + dist(full, y, z)
        for x, y in combinations(range(g.n), 2):
            assert dist(full, x, y) <= dist(h, x, y)


class TestMst:
    def test_triangle(self):
        g = load_graph(TRIANGLE)
        t = mst(g)
        assert t.edge_ids == {0, 1} and t.weight() == 2

    def test_tree_is_its_own_mst(self):
        g = WeightedMultigraph(4, [(0, 1, 5), (1, 2, 1), (1, 3, 2)])
        assert mst(g).edge_ids == {0, 1, 2}

    def test_lighter_parallel_edge(self):
        g = load_graph("2 2\n0 1 3\n0 1 5\n")
        assert mst(g).edge_ids == {0}

    def test_ties_go_to_smaller_id(self):
        assert mst(unit_cycle(4)).edge_ids == {0, 1, 2}

    @given(multigraphs(connected=True))
    def test_cycle_property(self, g):
        t = mst(g)
        for eid in set(range(g.m)) - t.edge_ids:
            e = g.edges[eid]
            path = short_path(g.subgraph(t.edge_ids), e.u, e.v)
            assert path is not None
            assert max(g.edges[i].w for i in path) <= e.w


class TestConnectivity:
    def test_k4(self):
        g = k4()
        assert all(pair_edge_connectivity(g.full(), u, v) == 3 for u, v in combinations(range(4), 2))

    def test_parallel(self):
        g = load_graph("2 2\n0 1 3\n0 1 5\n")
        assert pair_edge_connectivity(g.full(), 0, 1) == 2

    def test_same_vertex_rejected(self):
        with pytest.raises(ValueError):
            pair_edge_connectivity(k4().full(), 1, 1)

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            pair_edge_connectivity(k4().full(), 0, 9)

    def test_classes_k4_and_path(self):
        assert connectivity_classes(k4().full(), 3) == [[0, 1, 2, 3]]
        path = WeightedMultigraph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)])
        assert connectivity_classes(path.full(), 2) == [[0], [1], [2], [3]]
        assert connectivity_classes(path.full(), 1) == [[0, 1, 2, 3]]

    def test_classes_need_positive_level(self):
        with pytest.raises(ValueError):
            connectivity_classes(k4().full(), 0)

    @settings(max_examples=60, deadline=None)
    @given(graph_with_subset(max_n=6, max_m=9))
    def test_matches_cut_enumeration(self, pair):
        _, h = pair
        for u, v in combinations(range(h.n), 2):
            value = pair_edge_connectivity(h, u, v)
            assert value == pair_edge_connectivity_bruteforce(h, u, v)
            assert len(min_edge_cut(h, u, v)) == value

    @settings(max_examples=40, deadline=None)
    @given(multigraphs(max_n=7, max_m=12), st.integers(min_value=1, max_value=4))
    def test_classes_partition_and_refine(self, g, c):
        classes = connectivity_classes(g.full(), c)
        assert sorted(x for cls in classes for x in cls) == list(range(g.n))
        assert classes == connectivity_classes_bruteforce(g.full(), c)
        finer = connectivity_classes(g.full(), c + 1)
        for cls in finer:
            assert any(set(cls) <= set(coarse) for coarse in classes)


class TestWeightedGirth:
    def test_unit_four_cycle(self):
        value, witness = weighted_girth(unit_cycle(4))
        assert value == 4
        assert witness.normalized_weight == 4

    def test_triangle(self):
        g = load_graph(TRIANGLE)
        value, witness = weighted_girth(g)
        assert value == Fraction(6, 5)
        assert witness.is_closed_walk(g)
        assert (witness.total_weight, witness.max_edge_weight) == (12, 10)

    def test_tree(self):
        g = WeightedMultigraph(4, [(0, 1, 5), (1, 2, 1), (1, 3, 2)])
        assert weighted_girth(g) == (INFINITY, None)

    def test_parallel_two_cycle(self):
        g = load_graph("2 2\n0 1 3\n0 1 5\n")
        value, witness = weighted_girth(g)
        assert value == Fraction(8, 5)
        assert sorted(witness.edge_ids) == [0, 1]

    @settings(max_examples=150, deadline=None)
    @given(multigraphs(max_n=8, max_m=12))
    def test_matches_cycle_enumeration(self, g):
        value, witness = weighted_girth(g)
        assert value == weighted_girth_bruteforce(g)
        if witness is not None:
            assert witness.is_closed_walk(g)
            assert witness.normalized_weight == value


class TestLightness:
    def test_mst_is_one(self):
        g = load_graph(TRIANGLE)
        assert lightness(mst(g), g) == 1

    def test_triangle_whole(self):
        g = load_graph(TRIANGLE)
        assert lightness(g.full(), g) == 6

    def test_empty(self):
        g = load_graph(TRIANGLE)
        assert lightness(g.subgraph([]), g) == 0

    def test_disconnected_rejected(self):
        g = WeightedMultigraph(3, [(0, 1, 1)])
        with pytest.raises(ValueError):
            lightness(g.full(), g)
