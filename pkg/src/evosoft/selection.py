"""Cultural evolution under directional and frequency-dependent selection.

A population of N individuals carries real-valued trait variants. Each
generation resamples the population Wright-Fisher style from the variant
choice distribution

    Pi(z) = exp(beta z) (n_z / N)^J / Z,

so beta rewards higher trait values (payoff transparency) and J > 0
rewards already-common variants (imitation/conformity). New variants
enter one individual at a time, which is what makes the conformity
barrier bite: a lone innovation at frequency 1/N needs a trait advance
of at least (J - 1)/beta * ln(N) to out-score the resident variant.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass
class FdsParams:
    beta: float
    J: float
    N: int
    innovation_rate: float = 0.0
    delta_z: float = 1.0
    generations: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("population size must be >= 2")
        if self.beta < 0:
            raise ValueError("beta must be non-negative")
        if not (0.0 <= self.innovation_rate <= 1.0):
            raise ValueError("innovation_rate must lie in [0,1]")


class TraitPopulation:
    """Variant counts n_z > 0 with a fixed total N."""

    def __init__(self, counts, n_total=None):
        self.counts = {float(z): int(c) for z, c in counts.items() if c > 0}
        self.N = n_total if n_total is not None else sum(self.counts.values())
        if sum(self.counts.values()) != self.N:
            raise ValueError("counts must sum to N")
        if not self.counts:
            raise ValueError("population is empty")

    @classmethod
    def monomorphic(cls, z, n_total):
        return cls({float(z): n_total})

    def mean_trait(self):
        return sum(z * c for z, c in self.counts.items()) / self.N

    def max_trait(self):
        return max(self.counts)


def selection_prob(pop: TraitPopulation, beta, J):
    """Choice distribution over present variants, computed in log space.

    Adding a constant to every trait value leaves the distribution
    unchanged (the shift cancels in the normalization).
    """
    zs = sorted(pop.counts)
    logw = np.array([beta * z + J * math.log(pop.counts[z] / pop.N)
                     for z in zs])
    logw -= logw.max()
    w = np.exp(logw)
    total = w.sum()
    if not np.isfinite(total) or total <= 0:
        raise ValueError("all selection weights vanished")
    probs = w / total
    return dict(zip(zs, probs))


def step_population(pop: TraitPopulation, params: FdsParams, rng):
    """One Wright-Fisher generation plus (possibly) one innovation.

    N offspring are drawn independently from Pi computed on the parents;
    afterwards, with probability innovation_rate, one randomly chosen
    individual switches to a brand-new variant at max-trait + delta_z.
    """
    probs = selection_prob(pop, params.beta, params.J)
    zs = list(probs)
    counts = rng.multinomial(params.N, [probs[z] for z in zs])
    new_counts = {z: int(c) for z, c in zip(zs, counts) if c > 0}
    pop = TraitPopulation(new_counts, params.N)
    if params.innovation_rate > 0 and rng.random() < params.innovation_rate:
        pop = _convert_one(pop, pop.max_trait() + params.delta_z, rng, params.N)
    return pop

def _convert_one(pop, z_new, rng, n_total):
    zs = sorted(pop.counts)
    weights = np.array([pop.counts[z] for z in zs], dtype=float)
    victim = zs[int(rng.choice(len(zs), p=weights / weights.sum()))]
    counts = dict(pop.counts)
    counts[victim] -= 1
    counts[z_new] = counts.get(z_new, 0) + 1
    return TraitPopulation(counts, n_total)


def invasion_barrier(J, beta, N):
    """Minimal adaptive step ((J-1)/beta) ln N for a lone variant to invade.

    Non-positive values mean there is no conformity barrier. With beta = 0
    the barrier is infinite for J > 1 (raises); for J <= 1 it is zero.
    """
    if N < 2:
        raise ValueError("population size must be >= 2")
    if beta == 0.0:
        if J > 1.0:
            raise ValueError("barrier undefined (infinite)")
        return 0.0
    return ((J - 1.0) / beta) * math.log(N)


@dataclass
class PunctuationEvent:
    generation: int
    jump: float


def detect_punctuations(mean_traits, threshold, window=10):
    """Jump events in a mean-trait series.

    An event opens at the first generation where the advance over the
    trailing ``window`` generations exceeds ``threshold`` and closes when
    the windowed advance falls back below it; the recorded jump is the
    largest advance seen during the excursion.
    """
    events = []
    open_event = None
    m = np.asarray(mean_traits, dtype=float)
    for t in range(window, len(m)):
        adv = m[t] - m[t - window]
        if adv > threshold:
            if open_event is None:
                open_event = [t, adv]
            elif adv > open_event[1]:
                open_event[1] = adv
        elif open_event is not None:
            events.append(PunctuationEvent(*open_event))
            open_event = None
    if open_event is not None:
        events.append(PunctuationEvent(*open_event))
    return events


@dataclass
class FdsTrajectory:
    mean_z: np.ndarray
    n_variants: np.ndarray


def run_fds(params: FdsParams, jump_threshold=None, window=10):
    """Simulate from a monomorphic z=0 population.

    Returns (trajectory, events): per-generation mean trait and variant
    count (length generations + 1, including the initial state) plus the
    detected punctuation events. The default jump threshold is
    delta_z / 2.
    """
    rng = np.random.default_rng(params.seed)
    if jump_threshold is None:
        jump_threshold = params.delta_z / 2.0
    pop = TraitPopulation.monomorphic(0.0, params.N)
    means = [pop.mean_trait()]
    n_variants = [1]
    for _ in range(params.generations):
        pop = step_population(pop, params, rng)
        means.append(pop.mean_trait())
        n_variants.append(len(pop.counts))
    events = detect_punctuations(means, jump_threshold, window)
    traj = FdsTrajectory(np.array(means), np.array(n_variants, dtype=np.int64))
    return traj, events


def stasis_fraction(mean_traits, threshold, window=10):
    """Fraction of trailing windows whose advance stays below threshold."""
    m = np.asarray(mean_traits, dtype=float)
    if len(m) <= window:
        raise ValueError("series shorter than window")
    adv = m[window:] - m[:-window]
    return float(np.mean(adv < threshold))


def fixation_fraction(params: FdsParams, delta_z, n_events, seed=0,
                      max_generations=100000):
    """Fraction of single-individual innovations that reach fixation.

    Each event starts from a monomorphic z=0 population with one
    individual converted to z = delta_z, then runs pure selection (no
    further innovation) until one variant remains.
    """
    rng = np.random.default_rng(seed)
    sel = FdsParams(beta=params.beta, J=params.J, N=params.N,
                    innovation_rate=0.0, delta_z=delta_z,
                    generations=1, seed=0)
    fixed = 0
    for _ in range(n_events):
        pop = TraitPopulation({0.0: params.N - 1, float(delta_z): 1}, params.N)
        for _ in range(max_generations):
            if len(pop.counts) == 1:
                break
            pop = step_population(pop, sel, rng)
        survivor = pop.max_trait()
        if len(pop.counts) == 1 and survivor == float(delta_z):
            fixed += 1
    return fixed / n_events


def write_trajectory_csv(traj: FdsTrajectory, path):
    with open(path, "w", newline="\n") as fh:
        fh.write("generation,mean_z,n_variants\n")
        for gen, (mz, nv) in enumerate(zip(traj.mean_z, traj.n_variants)):
            fh.write(f"{gen},{mz:.10g},{int(nv)}\n")


def write_events_csv(events, path):
    with open(path, "w", newline="\n") as fh:
        fh.write("generation,jump\n")
        for ev in events:
            fh.write(f"{ev.generation},{ev.jump:.10g}\n")
