import itertools

import numpy as np
import pytest

from evosoft import motifs
from evosoft.graphs import DirectedGraph, canonical_code


def build(n, edges):
    g = DirectedGraph(n)
    for u, v in edges:
        g.add_edge(u, v)
    return g


def random_digraph(rng, n, p):
    g = DirectedGraph(n)
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < p:
                g.add_edge(u, v)
    return g


def brute_force_census_k3(g):
    """Independent O(N^3) oracle: every 3-subset, weak-connectivity by
    skeleton link count, classes via canonical_code."""
    skel = g.undirected_neighbor_sets()
    out_sets = [set(g.out_neighbors(v)) for v in range(g.node_count)]
    counts = {}
    for trio in itertools.combinations(range(g.node_count), 3):
        a, b, c = trio
        links = ((b in skel[a]) + (c in skel[a]) + (c in skel[b]))
        if links < 2:
            continue
        matrix = [[1 if (y in out_sets[x] and x != y) else 0 for y in trio]
                  for x in trio]
        code = canonical_code(matrix).code
        counts[code] = counts.get(code, 0) + 1
    return counts


class TestEnumerate:
    def test_three_cycle(self):
        census = motifs.enumerate_subgraphs(
            build(3, [(0, 1), (1, 2), (2, 0)]), 3)
        assert census.total == 1
        assert len(census.counts) == 1

    def test_out_star(self):
        # hub -> {1,2,3}: the three hub+leaf-pair subsets are connected
        # and isomorphic; the all-leaves subset is disconnected
        census = motifs.enumerate_subgraphs(
            build(4, [(0, 1), (0, 2), (0, 3)]), 3)
        assert census.total == 3
        assert len(census.counts) == 1

    def test_edgeless_graph(self):
        census = motifs.enumerate_subgraphs(DirectedGraph(5), 3)
        assert census.total == 0

    def test_too_small(self):
        with pytest.raises(ValueError):
            motifs.enumerate_subgraphs(DirectedGraph(2), 3)
        with pytest.raises(ValueError):
            motifs.enumerate_subgraphs(DirectedGraph(5), 5)

    def test_matches_brute_force_oracle(self):
        rng = np.random.default_rng(21)
        for _ in range(12):
            n = int(rng.integers(5, 26))
            g = random_digraph(rng, n, float(rng.uniform(0.05, 0.3)))
            assert motifs.enumerate_subgraphs(g, 3).counts == \
                brute_force_census_k3(g)

    def test_k4_count_on_known_graph(self):
        # directed 4-cycle: exactly one connected 4-subset
        census = motifs.enumerate_subgraphs(
            build(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), 4)
        assert census.total == 1


class TestSampled:
    def test_zero_samples_rejected(self):
        g = build(3, [(0, 1), (1, 2)])
        with pytest.raises(ValueError):
            motifs.sample_subgraphs(g, 3, 0, seed=1)

    def test_deterministic(self):
        rng = np.random.default_rng(5)
        g = random_digraph(rng, 40, 0.1)
        c1 = motifs.sample_subgraphs(g, 3, 500, seed=7)
        c2 = motifs.sample_subgraphs(g, 3, 500, seed=7)
        assert c1.counts == c2.counts
        assert not c1.exact

    def test_proportions_track_exact_census(self):
        rng = np.random.default_rng(9)
        g = random_digraph(rng, 60, 0.12)
        exact = motifs.enumerate_subgraphs(g, 3)
        sampled = motifs.sample_subgraphs(g, 3, 3000, seed=11)
        total_exact = exact.total
        total_obs = sampled.total
        assert total_obs >= 500
        for code, cnt in exact.counts.items():
            p = cnt / total_exact
            if p < 0.02:
                continue
            p_hat = sampled.counts.get(code, 0) / total_obs
            sigma = (p * (1 - p) / total_obs) ** 0.5
            assert abs(p_hat - p) < 3 * sigma + 0.01


class TestFrequencyRank:
    def test_normalization(self):
        census = motifs.MotifCensus(k=3, counts={10: 6, 20: 3, 30: 1})
        ranked = motifs.frequency_rank(census)
        assert [r for r, _, _ in ranked] == [1, 2, 3]
        assert [f for _, _, f in ranked] == pytest.approx([0.6, 0.3, 0.1])

    def test_single_class(self):
        ranked = motifs.frequency_rank(motifs.MotifCensus(k=3, counts={7: 4}))
        assert ranked == [(1, 7, 1.0)]

    def test_tie_break_by_code(self):
        census = motifs.MotifCensus(k=3, counts={30: 5, 10: 5, 20: 5})
        assert [c for _, c, _ in motifs.frequency_rank(census)] == [10, 20, 30]

    def test_empty_errors(self):
        with pytest.raises(ValueError):
            motifs.frequency_rank(motifs.MotifCensus(k=3, counts={}))

    def test_frequencies_sum_to_one(self):
        rng = np.random.default_rng(3)
        g = random_digraph(rng, 30, 0.15)
        ranked = motifs.frequency_rank(motifs.enumerate_subgraphs(g, 3))
        assert abs(sum(f for _, _, f in ranked) - 1.0) < 1e-12


class TestNullModel:
    def test_rewiring_preserves_degrees(self):
        rng = np.random.default_rng(13)
        g = random_digraph(rng, 30, 0.1)
        g_null = motifs.rewire_preserving_degrees(g, rng)
        assert g_null.edge_count == g.edge_count
        i1, o1 = g.degrees()
        i2, o2 = g_null.degrees()
        assert np.array_equal(i1, i2) and np.array_equal(o1, o2)
        assert sorted(g_null.edges()) != sorted(g.edges())

    def test_self_consistency_zscores(self):
        # observed graph drawn from the null itself: z should be small
        rng = np.random.default_rng(17)
        base = random_digraph(rng, 40, 0.08)
        observed = motifs.rewire_preserving_degrees(base, rng)
        scores = motifs.motif_zscores(observed, 3, n_null=40, seed=23)
        zs = [s.z for s in scores.per_class.values() if s.z is not None]
        assert zs
        frac_small = np.mean([abs(z) < 3 for z in zs])
        assert frac_small >= 0.95

    def test_minimum_null_samples(self):
        g = build(3, [(0, 1), (1, 2)])
        with pytest.raises(ValueError):
            motifs.motif_zscores(g, 3, n_null=5, seed=1)

    def test_overconstrained_graph_warns_then_fails(self):
        # a reciprocal pair admits no valid swap: every attempt makes a
        # self-loop, so each null sample warns and the retry cap trips
        g = build(3, [(0, 1), (1, 0)])
        with pytest.warns(UserWarning, match="no accepted swaps"):
            with pytest.raises(RuntimeError, match="rewiring failed"):
                motifs.motif_zscores(g, 3, n_null=10, seed=1)
