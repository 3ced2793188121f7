"""Census of small connected directed subgraphs and null-model z-scores.

Counts induced subgraphs on k-node subsets (k = 3 or 4) whose undirected
skeleton is connected, grouped by canonical class. Exact enumeration uses
the ESU scheme (each connected subset visited exactly once); the sampled
variant prunes the ESU tree with per-depth retention probabilities, which
gives every subset the same inclusion probability and therefore unbiased
class proportions. The null ensemble rewires edges with degree-preserving
swaps.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .graphs import DirectedGraph, canonical_code


@dataclass
class MotifCensus:
    k: int
    counts: dict          # CanonicalCode.code (int) -> occurrence count
    exact: bool = True

    @property
    def total(self):
        return sum(self.counts.values())


@dataclass
class ClassZScore:
    observed: int
    null_mean: float
    null_std: float
    z: float | None       # None when the null has zero variance


@dataclass
class MotifZScores:
    k: int
    per_class: dict       # code -> ClassZScore
    n_null: int


def _classify(members, out_sets):
    """Canonical code of the induced subgraph on ``members``."""
    matrix = [[1 if (a != b and b in out_sets[a]) else 0 for b in members]
              for a in members]
    return canonical_code(matrix).code


def _esu(graph, k, visit, rng=None, probs=None):
    """Enumerate connected k-subsets once each, calling visit(subset).

    With ``probs`` (length k, per-depth retention probabilities) each
    extension at depth d survives with probability probs[d-1]; a complete
    subset is then reached with probability prod(probs).
    """
    skel = graph.undirected_neighbor_sets()
    n = graph.node_count

    def extend(sub, ext, v):
        depth = len(sub)
        if depth == k - 1:
            while ext:
                w = ext.pop()
                if probs is None or rng.random() < probs[depth]:
                    visit(sub + [w])
            return
        exclusion = set(sub)
        for s in sub:
            exclusion |= skel[s]
        while ext:
            w = ext.pop()
            if probs is not None and rng.random() >= probs[depth]:
                continue
            ext2 = set(ext)
            for u in skel[w]:
                if u > v and u != w and u not in exclusion:
                    ext2.add(u)
            extend(sub + [w], ext2, v)

    for v in range(n):
        if probs is not None and rng.random() >= probs[0]:
            continue
        ext = {u for u in skel[v] if u > v}
        extend([v], ext, v)


def enumerate_subgraphs(graph, k):
    """Exact census of induced, weakly-connected k-subgraphs (k = 3 or 4)."""
    if k not in (3, 4):
        raise ValueError("subgraph order must be 3 or 4")
    if graph.node_count < k:
        raise ValueError("graph smaller than subgraph order")
    out_sets = [set(graph.out_neighbors(v)) for v in range(graph.node_count)]
    counts = {}

    def visit(members):
        code = _classify(members, out_sets)
        counts[code] = counts.get(code, 0) + 1

    _esu(graph, k, visit)
    return MotifCensus(k=k, counts=counts, exact=True)


def sample_subgraphs(graph, k, n_samples, seed):
    """Sampled census targeting about ``n_samples`` subgraph draws.

    A pilot pass with geometrically increasing retention estimates the
    total number of connected k-subsets; the reported census is a fresh
    pruned traversal whose leaf probability is chosen from that estimate.
    Class proportions are unbiased because every subset survives with the
    same probability.
    """
    if k not in (3, 4):
        raise ValueError("subgraph order must be 3 or 4")
    if graph.node_count < k:
        raise ValueError("graph smaller than subgraph order")
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    out_sets = [set(graph.out_neighbors(v)) for v in range(graph.node_count)]

    def run(leaf_prob):
        p = leaf_prob ** (1.0 / (k - 1))
        probs = [1.0] + [p] * (k - 1)
        counts = {}
        hits = 0

        def visit(members):
            nonlocal hits
            hits += 1
            code = _classify(members, out_sets)
            counts[code] = counts.get(code, 0) + 1

        _esu(graph, k, visit, rng=rng, probs=probs)
        return counts, hits

    # pilot: grow retention until the total-count estimate stabilizes
    leaf_prob = 1e-4
    while True:
        counts, hits = run(leaf_prob)
        if hits >= 200 or leaf_prob >= 1.0:
            break
        leaf_prob = min(1.0, leaf_prob * 4.0)
    total_est = max(hits / leaf_prob, 1.0)

    final_prob = min(1.0, n_samples / total_est)
    counts, hits = run(final_prob)
    while hits == 0 and final_prob < 1.0:
        final_prob = min(1.0, final_prob * 8.0)
        counts, hits = run(final_prob)
    return MotifCensus(k=k, counts=counts, exact=False)


def frequency_rank(census: MotifCensus):
    """Classes by descending count (ties by ascending code).

    Returns a list of (rank, code, relative_frequency); frequencies sum
    to 1.
    """
    total = census.total
    if total == 0:
        raise ValueError("empty census")
    ordered = sorted(census.counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [(i + 1, code, cnt / total) for i, (code, cnt) in enumerate(ordered)]


def rewire_preserving_degrees(graph, rng, swaps_per_edge=100):
    """Degree-preserving randomization by directed two-edge swaps.

    Attempts swaps_per_edge * edge_count swaps, rejecting any that would
    create a self-loop or duplicate edge. Returns a new DirectedGraph with
    every in- and out-degree unchanged.
    """
    edges = list(graph.edges())
    m = len(edges)
    if m < 2:
        return graph
    edge_set = set(edges)
    attempts = swaps_per_edge * m
    accepted = 0
    idx = rng.integers(0, m, size=2 * attempts)
    for t in range(attempts):
        i = int(idx[2 * t])
        j = int(idx[2 * t + 1])
        if i == j:
            continue
        a, b = edges[i]
        c, d = edges[j]
        if a == d or c == b:
            continue
        if (a, d) in edge_set or (c, b) in edge_set:
            continue
        edge_set.discard((a, b))
        edge_set.discard((c, d))
        edge_set.add((a, d))
        edge_set.add((c, b))
        edges[i] = (a, d)
        edges[j] = (c, b)
        accepted += 1
    if accepted == 0:
        return None
    g = DirectedGraph(graph.node_count)
    for u, v in edges:
        g.add_edge(u, v)
    return g


def motif_zscores(graph, k, n_null, seed, exact=True, n_samples=10000):
    """Observed-vs-null z-scores per canonical class.

    The null ensemble applies degree-preserving edge swaps to the observed
    graph. Classes with zero null variance get z = None.
    """
    if n_null < 10:
        raise ValueError("need at least 10 null samples")
    rng = np.random.default_rng(seed)

    def census_of(g, sub_seed):
        if exact:
            return enumerate_subgraphs(g, k)
        return sample_subgraphs(g, k, n_samples, sub_seed)

    observed = census_of(graph, seed)
    null_counts = {code: [] for code in observed.counts}
    for s in range(n_null):
        g_null = None
        for retry in range(3):
            g_null = rewire_preserving_degrees(graph, rng)
            if g_null is not None:
                break
            warnings.warn("edge-swap sample produced no accepted swaps; "
                          "regenerating")
        if g_null is None:
            raise RuntimeError("null-model rewiring failed after retries")
        census = census_of(g_null, seed + 1 + s)
        for code in set(null_counts) | set(census.counts):
            null_counts.setdefault(code, [])
            null_counts[code].append(census.counts.get(code, 0))
    per_class = {}
    for code, series in null_counts.items():
        # classes absent from some null samples count as zero there
        while len(series) < n_null:
            series.append(0)
        arr = np.array(series, dtype=float)
        mean = float(arr.mean())
        std = float(arr.std())
        obs = observed.counts.get(code, 0)
        z = (obs - mean) / std if std > 0 else None
        per_class[code] = ClassZScore(observed=obs, null_mean=mean,
                                      null_std=std, z=z)
    return MotifZScores(k=k, per_class=per_class, n_null=n_null)


def write_census_csv(census: MotifCensus, path):
    with open(path, "w", newline="\n") as fh:
        fh.write("rank,code,count,frequency\n")
        for rank, code, freq in frequency_rank(census):
            fh.write(f"{rank},{code},{census.counts[code]},{freq:.10g}\n")
