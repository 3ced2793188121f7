"""Directed-graph container and small-subgraph canonical forms.

The graph type used throughout: dense integer node ids, separate in/out
adjacency, simple edges only (no self-loops, no duplicates). Node labels,
where needed, are kept by the caller in a separate table.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

import numpy as np


class DirectedGraph:
    """Simple digraph over dense node ids ``0..node_count-1``.

    Duplicate edges are silently ignored (the growth model can propose the
    same edge through several paths; only distinct dependencies count).
    Self-loops are rejected.
    """

    __slots__ = ("_out", "_in", "_edges")

    def __init__(self, node_count=0):
        if node_count < 0:
            raise ValueError("node_count must be non-negative")
        self._out = [[] for _ in range(node_count)]
        self._in = [[] for _ in range(node_count)]
        self._edges = set()

    @property
    def node_count(self):
        return len(self._out)

    @property
    def edge_count(self):
        return len(self._edges)

    def add_node(self):
        """Append an isolated node, returning its id."""
        self._out.append([])
        self._in.append([])
        return len(self._out) - 1

    def add_edge(self, u, v):
        """Insert edge u -> v. Returns True if the edge was new.

        Raises ValueError("unknown node") for out-of-range ids and
        ValueError("self-loop rejected") when u == v.
        """
        n = len(self._out)
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError("unknown node")
        if u == v:
            raise ValueError("self-loop rejected")
        if (u, v) in self._edges:
            return False
        self._edges.add((u, v))
        self._out[u].append(v)
        self._in[v].append(u)
        return True

    def has_edge(self, u, v):
        return (u, v) in self._edges

    def out_neighbors(self, u):
        return self._out[u]

    def in_neighbors(self, v):
        return self._in[v]

    def edges(self):
        """Edges in deterministic order: by source id, then insertion order."""
        for u, targets in enumerate(self._out):
            for v in targets:
                yield (u, v)

    def degrees(self):
        """Return (in-degree, out-degree) arrays of length node_count."""
        indeg = np.fromiter((len(a) for a in self._in), dtype=np.int64,
                            count=len(self._in))
        outdeg = np.fromiter((len(a) for a in self._out), dtype=np.int64,
                             count=len(self._out))
        return indeg, outdeg

    def average_degree(self):
        """Edges per node, L/N. Raises on an empty graph."""
        if len(self._out) == 0:
            raise ValueError("empty graph")
        return len(self._edges) / len(self._out)

    def undirected_neighbor_sets(self):
        """Per-node set of skeleton neighbors (out plus in, deduplicated)."""
        return [set(o) | set(i) for o, i in zip(self._out, self._in)]


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Isomorphism-class key for a directed subgraph of order k <= 4.

    ``code`` is the minimum, over all k! node relabelings, of the row-major
    bit-packed adjacency matrix (entry (0,0) in the most significant of the
    k*k bits).
    """
    k: int
    code: int

    def edge_total(self):
        return bin(self.code).count("1")


def pack_adjacency(matrix):
    """Row-major bit-pack of a square 0/1 adjacency matrix."""
    code = 0
    for row in matrix:
        for x in row:
            code = (code << 1) | (1 if x else 0)
    return code


@lru_cache(maxsize=1 << 18)
def _canonical_packed(k, packed):
    bits = [(packed >> (k * k - 1 - i)) & 1 for i in range(k * k)]
    m = [bits[i * k:(i + 1) * k] for i in range(k)]
    best = None
    for perm in permutations(range(k)):
        c = 0
        for i in perm:
            row = m[i]
            for j in perm:
                c = (c << 1) | row[j]
        if best is None or c < best:
            best = c
    return best


def canonical_code(matrix):
    """Canonical form of a k-node directed subgraph, k in {2, 3, 4}.

    Exhaustive minimization over all permutations; exact for the orders
    used by the subgraph census. The diagonal must be zero.
    """
    k = len(matrix)
    if k not in (2, 3, 4):
        raise ValueError("subgraph order must be 2, 3 or 4")
    for i, row in enumerate(matrix):
        if len(row) != k:
            raise ValueError("adjacency matrix must be square")
        if row[i]:
            raise ValueError("self-loop rejected")
    return CanonicalCode(k, _canonical_packed(k, pack_adjacency(matrix)))


def write_edge_list(graph, path):
    """Write `src,dst` lines (LF), preceded by a `# nodes=<N>` header.

    The header preserves isolated nodes on round trip.
    """
    with open(path, "w", newline="\n") as fh:
        fh.write(f"# nodes={graph.node_count}\n")
        for u, v in graph.edges():
            fh.write(f"{u},{v}\n")


def read_edge_list(path):
    """Read the edge-list format written by :func:`write_edge_list`.

    The `# nodes=` header is optional; without it the node count is
    1 + the largest id seen.
    """
    n_declared = None
    pairs = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("nodes="):
                    n_declared = int(body[len("nodes="):])
                continue
            a, b = line.split(",")
            pairs.append((int(a), int(b)))
    n = n_declared if n_declared is not None else (
        1 + max((max(u, v) for u, v in pairs), default=-1))
    g = DirectedGraph(max(n, 0))
    for u, v in pairs:
        g.add_edge(u, v)
    return g
