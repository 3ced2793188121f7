import itertools

import numpy as np
import pytest

from evosoft.graphs import (CanonicalCode, DirectedGraph, canonical_code,
                            pack_adjacency, read_edge_list, write_edge_list)


def build(n, edges):
    g = DirectedGraph(n)
    for u, v in edges:
        g.add_edge(u, v)
    return g


class TestAddEdge:
    def test_single_edge(self):
        g = DirectedGraph(2)
        assert g.add_edge(0, 1) is True
        assert g.edge_count == 1
        indeg, _ = g.degrees()
        assert indeg[1] == 1

    def test_duplicate_ignored(self):
        g = DirectedGraph(2)
        g.add_edge(0, 1)
        assert g.add_edge(0, 1) is False
        assert g.edge_count == 1

    def test_self_loop_rejected(self):
        g = DirectedGraph(2)
        with pytest.raises(ValueError, match="self-loop rejected"):
            g.add_edge(0, 0)

    def test_unknown_node(self):
        g = DirectedGraph(2)
        with pytest.raises(ValueError, match="unknown node"):
            g.add_edge(0, 5)
        with pytest.raises(ValueError, match="unknown node"):
            g.add_edge(-1, 0)


class TestDegrees:
    def test_empty_graph(self):
        indeg, outdeg = DirectedGraph(3).degrees()
        assert list(indeg) == [0, 0, 0]
        assert list(outdeg) == [0, 0, 0]

    def test_shared_target(self):
        g = build(3, [(0, 2), (1, 2)])
        indeg, outdeg = g.degrees()
        assert list(indeg) == [0, 0, 2]
        assert list(outdeg) == [1, 1, 0]

    def test_three_cycle(self):
        g = build(3, [(0, 1), (1, 2), (2, 0)])
        indeg, outdeg = g.degrees()
        assert list(indeg) == [1, 1, 1]
        assert list(outdeg) == [1, 1, 1]

    def test_degree_sums_match_edge_count(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            n = int(rng.integers(2, 12))
            g = DirectedGraph(n)
            for _ in range(int(rng.integers(0, 25))):
                u, v = rng.integers(0, n, size=2)
                if u != v:
                    g.add_edge(int(u), int(v))
            indeg, outdeg = g.degrees()
            assert indeg.sum() == outdeg.sum() == g.edge_count


class TestAverageDegree:
    def test_cycle(self):
        assert build(3, [(0, 1), (1, 2), (2, 0)]).average_degree() == 1.0

    def test_half(self):
        assert build(2, [(0, 1)]).average_degree() == 0.5

    def test_complete_digraph(self):
        g = build(4, [(u, v) for u in range(4) for v in range(4) if u != v])
        assert g.average_degree() == 3.0

    def test_empty_graph_errors(self):
        with pytest.raises(ValueError, match="empty graph"):
            DirectedGraph(0).average_degree()


class TestTransposeConsistency:
    def test_rebuild_in_from_out(self):
        rng = np.random.default_rng(11)
        g = DirectedGraph(8)
        for _ in range(40):
            u, v = rng.integers(0, 8, size=2)
            if u != v:
                g.add_edge(int(u), int(v))
        rebuilt = [[] for _ in range(8)]
        for u in range(8):
            for v in g.out_neighbors(u):
                rebuilt[v].append(u)
        assert all(sorted(rebuilt[v]) == sorted(g.in_neighbors(v))
                   for v in range(8))


class TestCanonicalCode:
    def test_two_node_single_edge(self):
        # packings under the two orderings are 0b0100 = 4 and 0b0010 = 2
        assert pack_adjacency([[0, 1], [0, 0]]) == 4
        assert pack_adjacency([[0, 0], [1, 0]]) == 2
        assert canonical_code([[0, 1], [0, 0]]) == CanonicalCode(2, 2)

    def test_isomorphic_cycles_equal(self):
        cycle = [[0, 1, 0], [0, 0, 1], [1, 0, 0]]       # 0->1->2->0
        relabeled = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]   # 0->2->1->0
        assert canonical_code(cycle) == canonical_code(relabeled)

    def test_feedforward_differs_from_cycle(self):
        ffl = [[0, 1, 1], [0, 0, 1], [0, 0, 0]]
        cycle = [[0, 1, 0], [0, 0, 1], [1, 0, 0]]
        assert canonical_code(ffl) != canonical_code(cycle)

    def test_order_validation(self):
        with pytest.raises(ValueError):
            canonical_code([[0]])
        with pytest.raises(ValueError):
            canonical_code([[0] * 5 for _ in range(5)])
        with pytest.raises(ValueError):
            canonical_code([[1, 0], [0, 0]])

    def test_relabeling_invariance_random_digraphs(self):
        # full permutation sweep on random graphs of order up to 4
        rng = np.random.default_rng(7)
        for _ in range(60):
            k = int(rng.integers(2, 5))
            m = (rng.random((k, k)) < 0.4).astype(int)
            np.fill_diagonal(m, 0)
            base = canonical_code(m.tolist())
            for perm in itertools.permutations(range(k)):
                pm = [[int(m[perm[i]][perm[j]]) for j in range(k)]
                      for i in range(k)]
                assert canonical_code(pm) == base

    def test_edge_total(self):
        assert canonical_code([[0, 1], [1, 0]]).edge_total() == 2


class TestEdgeListIO:
    def test_round_trip_preserves_isolated_nodes(self, tmp_path):
        g = build(5, [(0, 1), (3, 0)])
        path = tmp_path / "edges.txt"
        write_edge_list(g, path)
        back = read_edge_list(path)
        assert back.node_count == 5
        assert sorted(back.edges()) == sorted(g.edges())

    def test_headerless_file(self, tmp_path):
        path = tmp_path / "bare.txt"
        path.write_text("0,1\n2,0\n")
        g = read_edge_list(path)
        assert g.node_count == 3
        assert g.has_edge(0, 1) and g.has_edge(2, 0)
