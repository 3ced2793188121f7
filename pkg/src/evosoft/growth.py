"""Copying ("tinkering") growth model for dependency networks.

Each new node picks m random targets among the existing nodes, links to a
target with probability p, and independently copies each of the target's
outgoing links with probability q. All edges point from younger to older
nodes, so grown graphs are acyclic. The mean-field rate equation
dL/dN = mp + mq L/N splits parameter space into three regimes controlled
by mq.
"""

import math
from dataclasses import dataclass

import numpy as np

from .graphs import DirectedGraph

_CRITICAL_EPS = 1e-12


@dataclass
class GrowthParams:
    m: int
    p: float
    q: float
    n_final: int
    n0: int | None = None          # default: m + 1 seed nodes in a chain
    seed: int = 0
    checkpoints: int = 50

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be a positive integer")
        if not (0.0 <= self.p <= 1.0):
            raise ValueError("p must lie in [0,1]")
        if not (0.0 <= self.q <= 1.0):
            raise ValueError("q must lie in [0,1]")
        if self.n0 is None:
            self.n0 = self.m + 1
        if not (1 <= self.n0 <= self.n_final):
            raise ValueError("need 1 <= n0 <= n_final")


@dataclass
class GrowthTrajectory:
    """(n, L) checkpoints recorded on a logarithmic grid of n."""
    n: np.ndarray
    edges: np.ndarray

    @property
    def avg_degree(self):
        return self.edges / self.n

    def rows(self):
        for n, l, k in zip(self.n, self.edges, self.avg_degree):
            yield int(n), int(l), float(k)


def _checkpoint_grid(n0, n_final, count):
    grid = np.unique(np.geomspace(n0, n_final, num=count).round().astype(int))
    return set(int(x) for x in grid)


def grow_network(params: GrowthParams):
    """Run the copying model; returns (DirectedGraph, GrowthTrajectory).

    Deterministic for a fixed seed. The seed graph is a directed chain on
    n0 nodes (node i+1 -> i), giving every early node a potential target
    with nonzero out-degree to inherit from.
    """
    rng = np.random.default_rng(params.seed)
    m, p, q = params.m, params.p, params.q
    g = DirectedGraph(params.n0)
    for i in range(1, params.n0):
        g.add_edge(i, i - 1)

    grid = _checkpoint_grid(params.n0, params.n_final, params.checkpoints)
    ns, ls = [], []
    if params.n0 in grid:
        ns.append(params.n0)
        ls.append(g.edge_count)

    for v in range(params.n0, params.n_final):
        k = min(m, v)
        targets = rng.choice(v, size=k, replace=False)
        g.add_node()
        for t in targets:
            t = int(t)
            if rng.random() < p:
                g.add_edge(v, t)
            for w in g.out_neighbors(t):
                if rng.random() < q:
                    g.add_edge(v, w)
        if (v + 1) in grid:
            ns.append(v + 1)
            ls.append(g.edge_count)

    traj = GrowthTrajectory(np.array(ns, dtype=np.int64),
                            np.array(ls, dtype=np.int64))
    return g, traj


def meanfield_avg_degree(m, p, q, n, n0=1, l0=0.0):
    """Average degree <K>(n) = L(n)/n from the exact rate-equation solution.

    For mq != 1:  L(n) = C n^{mq} + mp n / (1 - mq), C set by L(n0) = l0.
    For mq == 1:  L(n) = n (mp ln n + C).
    """
    mq = m * q
    mp = m * p
    if abs(mq - 1.0) <= _CRITICAL_EPS:
        c = l0 / n0 - mp * math.log(n0)
        return mp * math.log(n) + c
    c = (l0 - mp * n0 / (1.0 - mq)) / n0 ** mq
    return (c * n ** mq + mp * n / (1.0 - mq)) / n


def classify_regime(m, q):
    """Growth regime from the rate equation: controlled by mq.

    Returns "subcritical" (bounded <K>), "critical" (logarithmic <K>) or
    "supercritical" (power-law <K>).
    """
    mq = m * q
    if abs(mq - 1.0) <= _CRITICAL_EPS:
        return "critical"
    return "subcritical" if mq < 1.0 else "supercritical"


def write_trajectory_csv(traj: GrowthTrajectory, path):
    with open(path, "w", newline="\n") as fh:
        fh.write("n,L,avg_degree\n")
        for n, l, k in traj.rows():
            fh.write(f"{n},{l},{k:.10g}\n")
