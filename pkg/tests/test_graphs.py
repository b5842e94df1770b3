import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from randic.errors import GraphFormatError
from randic.graphs import (
    Graph,
    edge_mask_count,
    encode_graph6,
    enumerate_connected_graphs,
    format_edge_list,
    generate,
    incidence_matrix,
    is_connected,
    common_neighbor_stats,
    parse_edge_list,
    parse_graph6,
    subdivision,
    vertex_pairs,
)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
    ]
    return Graph.from_edges(n, edges)


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


class TestGraph:
    def test_from_edges_deduplicates_and_sorts(self):
        g = Graph.from_edges(4, [(2, 1), (1, 2), (0, 3), (3, 0)])
        assert g.edges == ((0, 3), (1, 2))
        assert g.m == 2

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Graph.from_edges(3, [(0, 3)])
        with pytest.raises(ValueError):
            Graph.from_edges(3, [(-1, 0)])

    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Graph.from_edges(3, [(1, 1)])

    def test_degrees_and_neighbors_agree_with_adjacency(self):
        rng = random.Random(7)
        for _ in range(25):
            g = random_graph(rng, rng.randint(1, 12), rng.random())
            a = g.adjacency
            assert np.array_equal(a, a.T)
            assert np.all(np.diagonal(a) == 0)
            assert tuple(a.sum(axis=0)) == g.degrees
            for v in range(g.n):
                assert g.neighbors(v) == {w for w in range(g.n) if a[v, w]}

    def test_adjacency_is_readonly(self):
        g = generate("path", 3)
        with pytest.raises(ValueError):
            g.adjacency[0, 1] = 5

    def test_regularity(self):
        assert generate("cycle", 5).is_regular()
        assert not generate("star", 4).is_regular()


class TestGraph6:
    def test_known_strings(self):
        # single edge on two vertices, then a triangle
        k2 = parse_graph6("A_")
        assert (k2.n, k2.edges) == (2, ((0, 1),))
        tri = parse_graph6("Bw")
        assert (tri.n, tri.edges) == (3, ((0, 1), (0, 2), (1, 2)))

    def test_optional_header_prefix(self):
        assert parse_graph6(">>graph6<<A_") == parse_graph6("A_")

    def test_roundtrip_matches_networkx(self):
        rng = random.Random(4242)
        for _ in range(200):
            g = random_graph(rng, rng.randint(1, 30), rng.random())
            code = encode_graph6(g)
            theirs = nx.to_graph6_bytes(to_networkx(g), header=False).decode().strip()
            assert code == theirs
            back = parse_graph6(code)
            assert back == g

    def test_parse_agrees_with_networkx(self):
        rng = random.Random(99)
        for _ in range(100):
            g = random_graph(rng, rng.randint(2, 25), 0.4)
            code = nx.to_graph6_bytes(to_networkx(g), header=False).decode().strip()
            assert parse_graph6(code) == g

    @pytest.mark.parametrize(
        "bad",
        [
            "",
            "   ",
            "A",  # missing body byte
            "A__",  # extra body byte
            "A" + chr(30),  # character below the printable range
            "~??",  # extended form is refused
            "A`",  # nonzero padding bit
        ],
    )
    def test_malformed_inputs_raise(self, bad):
        with pytest.raises(GraphFormatError):
            parse_graph6(bad)

    def test_encode_rejects_oversize(self):
        g = Graph.from_edges(63, [(0, 1)])
        with pytest.raises(GraphFormatError):
            encode_graph6(g)


class TestEdgeListFormat:
    def test_roundtrip(self):
        g = generate("cycle", 5)
        assert parse_edge_list(format_edge_list(g)) == g

    def test_order_only_document(self):
        g = parse_edge_list("3")
        assert (g.n, g.m) == (3, 0)

    @pytest.mark.parametrize("bad", ["", "x", "3 0", "3 0 1 2", "-1", "2 0 0"])
    def test_malformed_inputs_raise(self, bad):
        with pytest.raises(GraphFormatError):
            parse_edge_list(bad)


class TestGenerators:
    def test_complete(self):
        g = generate("complete", 5)
        assert g.m == 10
        assert g.degrees == (4,) * 5

    def test_path_and_cycle(self):
        p = generate("path", 6)
        assert p.degrees == (1, 2, 2, 2, 2, 1)
        c = generate("cycle", 6)
        assert c.degrees == (2,) * 6

    def test_star_center(self):
        g = generate("star", 7)
        assert g.degrees[0] == 6
        assert g.degrees[1:] == (1,) * 6

    def test_petersen_shape(self):
        g = generate("petersen")
        assert (g.n, g.m) == (10, 15)
        assert g.degrees == (3,) * 10
        assert nx.is_isomorphic(to_networkx(g), nx.petersen_graph())

    @pytest.mark.parametrize(
        "kind,n", [("complete", 1), ("path", 1), ("cycle", 2), ("star", 1)]
    )
    def test_orders_below_minimum_raise(self, kind, n):
        with pytest.raises(ValueError):
            generate(kind, n)

    def test_unknown_kind_raises(self):
        with pytest.raises(ValueError):
            generate("wheel", 5)

    def test_missing_order_raises(self):
        with pytest.raises(ValueError):
            generate("path")


class TestSubdivision:
    @pytest.mark.parametrize("kind,n", [("path", 4), ("cycle", 5), ("complete", 4), ("star", 6)])
    def test_counts_and_degrees(self, kind, n):
        g = generate(kind, n)
        s = subdivision(g)
        assert (s.n, s.m) == (g.n + g.m, 2 * g.m)
        # original vertices keep their degree, every new vertex has degree 2
        assert s.degrees[: g.n] == g.degrees
        assert s.degrees[g.n :] == (2,) * g.m

    def test_result_is_bipartite(self):
        g = generate("complete", 5)
        assert nx.is_bipartite(to_networkx(subdivision(g)))

    def test_cycle_subdivides_to_double_cycle(self):
        s = subdivision(generate("cycle", 4))
        assert nx.is_isomorphic(to_networkx(s), nx.cycle_graph(8))


class TestConnectivity:
    def test_small_cases(self):
        assert is_connected(Graph.from_edges(1, []))
        assert is_connected(Graph.from_edges(0, []))
        assert not is_connected(Graph.from_edges(2, []))
        assert is_connected(generate("path", 9))
        assert not is_connected(Graph.from_edges(4, [(0, 1), (2, 3)]))

    @given(st.integers(min_value=0, max_value=2**31 - 1))
    @settings(max_examples=60, deadline=None)
    def test_matches_networkx(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(1, 14), rng.random())
        assert is_connected(g) == nx.is_connected(to_networkx(g))


class TestEnumeration:
    # labeled connected graph counts, cross-checked against a union-find
    # sweep below and the standard sequence 1, 4, 38, 728, 26704
    KNOWN = {2: 1, 3: 4, 4: 38, 5: 728}

    @pytest.mark.parametrize("n,count", sorted(KNOWN.items()))
    def test_counts(self, n, count):
        assert sum(1 for _ in enumerate_connected_graphs(n)) == count

    def test_yields_connected_canonical_graphs(self):
        for g in enumerate_connected_graphs(4):
            assert g.n == 4
            assert is_connected(g)
            assert g.edges == tuple(sorted(set(g.edges)))

    def test_against_union_find_oracle(self):
        n = 4
        pairs = vertex_pairs(n)

        def connected_by_union_find(mask):
            parent = list(range(n))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for k, (u, v) in enumerate(pairs):
                if mask >> k & 1:
                    parent[find(u)] = find(v)
            return len({find(v) for v in range(n)}) == 1

        expected = {
            mask for mask in range(edge_mask_count(n)) if connected_by_union_find(mask)
        }
        seen = set()
        for g in enumerate_connected_graphs(n):
            mask = 0
            index = {pair: k for k, pair in enumerate(pairs)}
            for e in g.edges:
                mask |= 1 << index[e]
            seen.add(mask)
        assert seen == expected

    @pytest.mark.parametrize("n", [1, 8])
    def test_out_of_range_orders_raise(self, n):
        with pytest.raises(ValueError):
            list(enumerate_connected_graphs(n))


class TestStructuralHelpers:
    def test_incidence_product_is_degree_plus_adjacency(self):
        rng = random.Random(11)
        for _ in range(20):
            g = random_graph(rng, rng.randint(2, 10), 0.6)
            if g.m == 0:
                continue
            b = incidence_matrix(g)
            expected = np.diag(np.array(g.degrees)) + g.adjacency
            assert np.array_equal(b @ b.T, expected)

    def test_incidence_needs_an_edge(self):
        with pytest.raises(ValueError):
            incidence_matrix(Graph.from_edges(3, []))

    def test_common_neighbor_stats(self):
        g = generate("complete", 4)
        count, weighted = common_neighbor_stats(g, 0, 1)
        assert count == 2
        assert weighted == pytest.approx(2 / 3)
        with pytest.raises(ValueError):
            common_neighbor_stats(g, 2, 2)
