"""Inter-modification time statistics for development activity logs.

Builds waiting-time samples from timestamped change events and tests
whether they look like a memoryless (Poisson/exponential) process or the
heavy, bursty stretched-exponential alternative. Activity with shape
parameter well below one is flagged as non-Poissonian.
"""

import csv
from dataclasses import dataclass

import numpy as np

from . import fits


@dataclass
class EventLog:
    timestamps: np.ndarray
    entities: list | None = None    # optional per-event key (file, author)

    def __post_init__(self):
        ts = np.asarray(self.timestamps, dtype=float)
        order = np.argsort(ts, kind="stable")
        self.timestamps = ts[order]
        if self.entities is not None:
            if len(self.entities) != len(ts):
                raise ValueError("entity keys must match timestamps")
            self.entities = [self.entities[i] for i in order]


def read_event_log(path):
    """Load a `timestamp[,entity]` CSV (no header required)."""
    stamps, entities = [], []
    saw_entity = False
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or not row[0].strip():
                continue
            first = row[0].strip()
            if first.startswith("#"):
                continue
            try:
                t = float(first)
            except ValueError:
                continue        # tolerate a header line
            stamps.append(t)
            if len(row) > 1 and row[1].strip():
                saw_entity = True
                entities.append(row[1].strip())
            else:
                entities.append(None)
    if not stamps:
        raise ValueError("no events in log")
    return EventLog(np.array(stamps),
                    entities if saw_entity else None)


@dataclass
class InterEventSamples:
    samples: np.ndarray             # pooled positive gaps
    dropped_zero_gaps: int
    per_group: dict | None = None   # entity -> gap array when grouped


def inter_event_times(log: EventLog, group_by="none"):
    """Consecutive time differences, dropping (and counting) zero gaps.

    group_by="entity" computes gaps within each entity's own event stream
    and pools them; the per-entity arrays are kept on the result.
    """
    if group_by not in ("none", "entity"):
        raise ValueError("group_by must be 'none' or 'entity'")
    if group_by == "entity":
        if log.entities is None:
            raise ValueError("log has no entity keys")
        groups = {}
        for t, e in zip(log.timestamps, log.entities):
            groups.setdefault(e, []).append(t)
        per_group = {}
        dropped = 0
        pooled = []
        for e, ts in groups.items():
            if len(ts) < 2:
                continue
            gaps = np.diff(np.array(ts))
            dropped += int(np.count_nonzero(gaps == 0))
            gaps = gaps[gaps > 0]
            per_group[e] = gaps
            pooled.append(gaps)
        if not pooled or all(len(g) == 0 for g in pooled):
            raise ValueError("fewer than 2 usable events")
        return InterEventSamples(samples=np.concatenate(pooled),
                                 dropped_zero_gaps=dropped,
                                 per_group=per_group)
    if len(log.timestamps) < 2:
        raise ValueError("fewer than 2 usable events")
    gaps = np.diff(log.timestamps)
    dropped = int(np.count_nonzero(gaps == 0))
    gaps = gaps[gaps > 0]
    if len(gaps) == 0:
        raise ValueError("fewer than 2 usable events")
    return InterEventSamples(samples=gaps, dropped_zero_gaps=dropped)


@dataclass
class WaitingTimeComparison:
    alpha: float
    mean_T: float
    rate: float
    ks_weibull: float
    ks_exponential: float
    non_poissonian: bool
    n_samples: int

    def as_dict(self):
        return {"alpha": self.alpha, "mean_T": self.mean_T,
                "rate": self.rate, "ks_weibull": self.ks_weibull,
                "ks_exponential": self.ks_exponential,
                "non_poissonian": self.non_poissonian,
                "n_samples": self.n_samples}


def weibull_vs_exponential(samples):
    """Fit both waiting-time families and compare their KS distances.

    Flags the sample as non-Poissonian when the fitted shape is below 0.9
    and the stretched-exponential beats the exponential on KS distance.
    Scale-free: rescaling all samples leaves the shape and verdict alone.
    """
    x = np.asarray(samples, dtype=float)
    if x.size < 30:
        raise ValueError("insufficient data")
    wb = fits.fit_weibull(x)
    ex = fits.fit_exponential(x)
    ks_wb = fits.ks_distance(x, wb.ccdf)
    ks_ex = fits.ks_distance(x, lambda t: np.exp(-ex.rate * t))
    verdict = wb.alpha < 0.9 and ks_wb < ks_ex
    return WaitingTimeComparison(alpha=wb.alpha, mean_T=wb.mean_T,
                                 rate=ex.rate, ks_weibull=ks_wb,
                                 ks_exponential=ks_ex,
                                 non_poissonian=verdict,
                                 n_samples=int(x.size))


def stretched_exponential_samples(alpha, scale, size, seed):
    """Inverse-CDF sampling of P_>(T) = exp(-(T/scale)^alpha)."""
    rng = np.random.default_rng(seed)
    u = rng.random(size)
    return scale * (-np.log(u)) ** (1.0 / alpha)
