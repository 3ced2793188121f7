"""Competitive exclusion among languages: well-mixed ODE and lattice model.

The well-mixed system evolves popularity shares rho_i on the simplex:

    drho_i/dt = mu_i rho_i (A_i - phi),   A_i = rho_i - sum_{j != i} rho_j

with phi the mu-weighted population mean of A, which keeps the shares
summing to one exactly. The spatially explicit counterpart places agents
on a periodic square lattice; agents adopt languages from their four
neighbors in proportion to local frequency and, over a fixed repertoire
capacity, discard whichever of their languages is least popular in the
global popularity table. Diversity collapses to the capacity (the niche
size); innovation injects fresh language ids.
"""

from collections import Counter
from dataclasses import dataclass, field

import numpy as np


@dataclass
class CompetitionParams:
    mu: np.ndarray
    dt: float = 0.05
    steps: int = 4000

    def __post_init__(self):
        self.mu = np.asarray(self.mu, dtype=float)
        if np.any(self.mu <= 0):
            raise ValueError("growth rates must be positive")
        if self.dt <= 0:
            raise ValueError("dt must be positive")


def competition_rhs(rho, mu):
    """Derivative of the share vector; components sum to zero analytically."""
    rho = np.asarray(rho, dtype=float)
    mu = np.asarray(mu, dtype=float)
    total = rho.sum()
    if total == 0.0:
        raise ValueError("all shares zero; competition term undefined")
    advantage = 2.0 * rho - total
    weights = mu * rho
    phi = float(weights @ advantage) / float(weights.sum())
    return weights * (advantage - phi)


def integrate_competition(params: CompetitionParams, rho0, record_every=1):
    """Fixed-step classic Runge-Kutta integration of the share dynamics.

    States are renormalized onto the simplex whenever the accumulated sum
    drifts beyond 1e-12. Returns (times, trajectory) with trajectory rows
    on the simplex. Raises "step too large" when dt * max|rhs| > 0.1.
    """
    rho = np.asarray(rho0, dtype=float).copy()
    if rho.shape != params.mu.shape:
        raise ValueError("rho0 and mu must have matching lengths")
    if abs(rho.sum() - 1.0) > 1e-9 or np.any(rho < 0):
        raise ValueError("rho0 must lie on the simplex")
    dt = params.dt
    mu = params.mu
    times = [0.0]
    states = [rho.copy()]
    for step in range(1, params.steps + 1):
        k1 = competition_rhs(rho, mu)
        if dt * float(np.max(np.abs(k1))) > 0.1:
            raise ValueError("step too large")
        k2 = competition_rhs(rho + 0.5 * dt * k1, mu)
        k3 = competition_rhs(rho + 0.5 * dt * k2, mu)
        k4 = competition_rhs(rho + dt * k3, mu)
        rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        drift = rho.sum() - 1.0
        if abs(drift) > 1e-12:
            rho = rho / rho.sum()
        if step % record_every == 0 or step == params.steps:
            times.append(step * dt)
            states.append(rho.copy())
    return np.array(times), np.vstack(states)


@dataclass
class LatticeParams:
    side: int
    capacity: int
    innovation_rate: float
    steps: int
    seed: int = 0
    n_initial: int = 10   # distinct language ids seeded at t=0

    def __post_init__(self):
        if self.side < 2:
            raise ValueError("lattice side must be >= 2")
        if self.capacity < 1:
            raise ValueError("capacity must be >= 1")
        if not (0.0 <= self.innovation_rate <= 1.0):
            raise ValueError("innovation_rate must lie in [0,1]")
        if self.steps < 1:
            raise ValueError("need at least one sweep")
        if self.n_initial < 1:
            raise ValueError("need at least one initial language")


@dataclass
class LatticeState:
    side: int
    repertoires: list                 # per site, acquisition-ordered ids
    popularity: Counter = field(default_factory=Counter)

    def recount(self):
        c = Counter()
        for rep in self.repertoires:
            c.update(rep)
        return c

    def diversity(self):
        return len(self.popularity)


def _neighbor_table(side):
    nbrs = []
    for i in range(side * side):
        r, c = divmod(i, side)
        nbrs.append((((r - 1) % side) * side + c,
                     ((r + 1) % side) * side + c,
                     r * side + (c - 1) % side,
                     r * side + (c + 1) % side))
    return nbrs


def run_lattice(params: LatticeParams, popularity_check=None):
    """Simulate the lattice model; returns (diversity_per_sweep, state).

    Each sweep visits every agent once in random order. An agent either
    innovates (fresh global id, probability innovation_rate) or adopts a
    language drawn uniformly from the multiset of its four neighbors'
    repertoires (hence proportionally to local frequency). A repertoire
    pushed over capacity sheds the member with the lowest global
    popularity count, breaking ties toward the oldest-acquired language.

    With innovation off, the run stops early once every repertoire holds
    the same language set (the dynamics is then frozen).

    ``popularity_check(state)`` is invoked every 100 sweeps if given.
    """
    rng = np.random.default_rng(params.seed)
    side = params.side
    n = side * side
    nbrs = _neighbor_table(side)
    initial = rng.integers(0, params.n_initial, size=n)
    reps = [[int(x)] for x in initial]
    pop = Counter(int(x) for x in initial)
    state = LatticeState(side=side, repertoires=reps, popularity=pop)
    next_id = params.n_initial
    cap = params.capacity
    innovating = params.innovation_rate > 0.0
    diversity = []

    for sweep in range(params.steps):
        order = rng.permutation(n)
        u_pick = rng.random(n)
        u_innov = rng.random(n) if innovating else None
        for j in range(n):
            i = int(order[j])
            rep = reps[i]
            if innovating and u_innov[j] < params.innovation_rate:
                rep.append(next_id)
                pop[next_id] += 1
                next_id += 1
            else:
                a, b, c, d = nbrs[i]
                tokens = reps[a] + reps[b] + reps[c] + reps[d]
                lang = tokens[int(u_pick[j] * len(tokens))]
                if lang in rep:
                    continue
                rep.append(lang)
                pop[lang] += 1
            if len(rep) > cap:
                drop_idx = 0
                low = pop[rep[0]]
                for idx in range(1, len(rep)):
                    cnt = pop[rep[idx]]
                    if cnt < low:
                        low = cnt
                        drop_idx = idx
                gone = rep.pop(drop_idx)
                pop[gone] -= 1
                if pop[gone] == 0:
                    del pop[gone]
        diversity.append(len(pop))
        if popularity_check is not None and (sweep + 1) % 100 == 0:
            popularity_check(state)
        if not innovating and len(pop) <= cap:
            first = set(reps[0])
            if all(set(r) == first for r in reps):
                break
    return np.array(diversity, dtype=np.int64), state


def rank_popularity(state: LatticeState):
    """Language counts over all repertoires, sorted descending."""
    counts = state.recount()
    if not counts:
        raise ValueError("empty lattice")
    return np.array(sorted(counts.values(), reverse=True), dtype=np.int64)


def write_diversity_csv(diversity, path):
    with open(path, "w", newline="\n") as fh:
        fh.write("step,diversity\n")
        for step, d in enumerate(diversity):
            fh.write(f"{step},{int(d)}\n")


def write_rank_popularity_csv(counts, path):
    with open(path, "w", newline="\n") as fh:
        fh.write("rank,count\n")
        for rank, c in enumerate(counts, start=1):
            fh.write(f"{rank},{int(c)}\n")
