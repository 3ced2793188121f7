"""Estimators for the distribution families used by the analyses.

Covers tail exponents of degree distributions (continuous MLE with a
half-integer shift for integer data), exponential rates, the two-exponent
discrete generalized beta rank law, and stretched-exponential (Weibull)
inter-event times via CCDF linearization. All fitters are pure functions.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats


@dataclass(frozen=True)
class PowerLawFit:
    gamma: float
    k_min: float
    n_tail: int
    stderr: float

    def as_dict(self):
        return {"gamma": self.gamma, "k_min": self.k_min,
                "n_tail": self.n_tail, "stderr": self.stderr}


@dataclass(frozen=True)
class ExponentialFit:
    rate: float

    def as_dict(self):
        return {"rate": self.rate}


@dataclass(frozen=True)
class DgbdFit:
    """Rank law f(r) = A r^-a (R+1-r)^b fitted by log-space least squares."""
    A: float
    a: float
    b: float
    R: int
    r2: float
    residuals: np.ndarray = None

    def as_dict(self):
        return {"A": self.A, "a": self.a, "b": self.b,
                "R": self.R, "r2": self.r2}

    def evaluate(self, ranks):
        r = np.asarray(ranks, dtype=float)
        return self.A * r ** (-self.a) * (self.R + 1 - r) ** self.b


@dataclass(frozen=True)
class WeibullFit:
    """Stretched-exponential CCDF P_>(T) = exp(-(T/mean_T)^alpha)."""
    alpha: float
    mean_T: float

    def as_dict(self):
        return {"alpha": self.alpha, "mean_T": self.mean_T}

    def ccdf(self, t):
        return np.exp(-(np.asarray(t, dtype=float) / self.mean_T) ** self.alpha)


def empirical_ccdf(samples):
    """Empirical P_>(x), evaluated at each distinct sample value.

    Returns (values, p_gt) with p_gt[i] = fraction of samples strictly
    greater than values[i]; non-increasing and ending at 0.
    """
    x = np.sort(np.asarray(samples, dtype=float))
    if x.size == 0:
        raise ValueError("empty sample")
    vals, start = np.unique(x, return_index=True)
    counts = np.diff(np.append(start, x.size))
    p_gt = (x.size - np.cumsum(counts)) / x.size
    return vals, p_gt


def fit_powerlaw_mle(samples, k_min=1.0, shift=0.5):
    """Continuous maximum-likelihood tail exponent.

    gamma = 1 + n / sum(ln(k_i / (k_min - shift))) over the n samples with
    k_i >= k_min. The default shift of 0.5 is the standard correction for
    integer-valued data; pass shift=0 for genuinely continuous samples.
    """
    if k_min < 1:
        raise ValueError("k_min must be >= 1")
    x = np.asarray(samples, dtype=float)
    tail = x[x >= k_min]
    if tail.size < 2:
        raise ValueError("need at least 2 samples >= k_min")
    gamma = 1.0 + tail.size / np.sum(np.log(tail / (k_min - shift)))
    stderr = (gamma - 1.0) / math.sqrt(tail.size)
    return PowerLawFit(float(gamma), float(k_min), int(tail.size), float(stderr))


def scan_powerlaw_kmin(samples, k_min_values=None, shift=0.5):
    """KS-optimal lower cutoff: refit at each candidate k_min, keep the one
    whose fitted tail has the smallest KS distance to the model CCDF.

    Returns (best_fit, best_ks). Candidates default to the distinct sample
    values up to the point where fewer than 50 tail samples remain.
    """
    x = np.asarray(samples, dtype=float)
    if k_min_values is None:
        k_min_values = [v for v in np.unique(x) if v >= 1
                        and np.count_nonzero(x >= v) >= 50]
        if not k_min_values:
            k_min_values = [max(1.0, float(np.min(x)))]
    best = None
    for km in k_min_values:
        try:
            fit = fit_powerlaw_mle(x, k_min=km, shift=shift)
        except ValueError:
            continue
        xm = km - shift
        model = lambda t, g=fit.gamma, xm=xm: (t / xm) ** (1.0 - g)
        d = ks_distance(x[x >= km], model)
        if best is None or d < best[1]:
            best = (fit, d)
    if best is None:
        raise ValueError("no usable k_min candidate")
    return best


def fit_exponential(samples):
    """Rate = 1/mean. Raises when the mean is zero."""
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ValueError("empty sample")
    if np.any(x < 0):
        raise ValueError("samples must be non-negative")
    mean = float(np.mean(x))
    if mean == 0.0:
        raise ValueError("zero-mean sample")
    return ExponentialFit(1.0 / mean)


def ks_distance(samples, model_ccdf):
    """Max over the distinct sample values of |empirical CCDF - model CCDF|."""
    vals, emp = empirical_ccdf(samples)
    model = np.asarray([model_ccdf(v) for v in vals], dtype=float)
    return float(np.max(np.abs(emp - model)))


def fit_dgbd(frequencies):
    """Fit f(r) = A r^-a (R+1-r)^b by OLS on ln f over ranks 1..R.

    ``frequencies`` is the rank-ordered sequence f(1), ..., f(R); values
    must be positive. R >= 3 so the three coefficients are identifiable.
    When the data are exactly constant (zero total variance) a perfect fit
    reports r2 = 1.
    """
    f = np.asarray(frequencies, dtype=float)
    if f.size < 3:
        raise ValueError("need at least 3 ranks")
    if np.any(f <= 0):
        raise ValueError("frequencies must be positive")
    big_r = f.size
    r = np.arange(1, big_r + 1, dtype=float)
    y = np.log(f)
    design = np.column_stack([np.ones(big_r), -np.log(r), np.log(big_r + 1 - r)])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    ss_res = float(resid @ resid)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot > 0:
        r2 = 1.0 - ss_res / ss_tot
    else:
        r2 = 1.0 if ss_res < 1e-20 else 0.0
    return DgbdFit(A=float(np.exp(coef[0])), a=float(coef[1]), b=float(coef[2]),
                   R=int(big_r), r2=r2, residuals=resid)


def fit_weibull(samples):
    """Shape and scale from the linearized empirical CCDF.

    Regresses ln(-ln P_>(T)) on ln T over the interior CCDF points
    (P_> strictly between 0 and 1); the slope is alpha and the scale
    follows from the intercept. Robust for heavy-tailed alpha < 1 data.
    """
    x = np.asarray(samples, dtype=float)
    if x.size < 10:
        raise ValueError("need at least 10 samples")
    if np.any(x <= 0):
        raise ValueError("samples must be positive")
    vals, p_gt = empirical_ccdf(x)
    keep = (p_gt > 0.0) & (p_gt < 1.0)
    if np.count_nonzero(keep) < 3:
        raise ValueError("fewer than 3 usable CCDF points")
    lx = np.log(vals[keep])
    ly = np.log(-np.log(p_gt[keep]))
    res = stats.linregress(lx, ly)
    alpha = float(res.slope)
    if alpha <= 0:
        raise ValueError("non-positive shape estimate; data not Weibull-like")
    scale = float(np.exp(-res.intercept / alpha))
    return WeibullFit(alpha=alpha, mean_T=scale)


def loglikelihood_exp_vs_powerlaw(samples, k_min=1.0, shift=0.5):
    """Log-likelihood ratio of an exponential tail against a power-law tail.

    Both densities are normalized on [k_min - shift, inf) and fitted by
    MLE on the samples >= k_min, following the usual model-comparison
    recipe for degree data. Positive values favor the exponential.

    Returns (llr, exponential_fit, powerlaw_fit).
    """
    x = np.asarray(samples, dtype=float)
    tail = x[x >= k_min]
    if tail.size < 2:
        raise ValueError("need at least 2 samples >= k_min")
    xm = k_min - shift
    shifted = tail - xm
    lam = 1.0 / float(np.mean(shifted))
    ll_exp = tail.size * math.log(lam) - lam * float(np.sum(shifted))
    pl = fit_powerlaw_mle(tail, k_min=k_min, shift=shift)
    g = pl.gamma
    ll_pl = (tail.size * math.log((g - 1.0) / xm)
             - g * float(np.sum(np.log(tail / xm))))
    return ll_exp - ll_pl, ExponentialFit(lam), pl
